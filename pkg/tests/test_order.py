"""Preorder analysis: reachability against a breadth-first-search oracle,
distances, morphism classification, and the declared finiteness predicates."""

from collections import deque

import pytest

from locfin.gallery import chainA, discrete_category, gallery_instantiate
from locfin.lincat import obj_id, scope_cat
from locfin.order import (
    UnknownHomSpace,
    check_interval_finiteness,
    check_upper_lower_finite,
    classify_morphism,
    compute_preorder,
    longest_strict_chain,
    short_subcategory,
)


def bfs_reach(c, start):
    seen = {start}
    dq = deque([start])
    while dq:
        cur = dq.popleft()
        for (x, y) in c.hom:
            if x == cur and y not in seen:
                seen.add(y)
                dq.append(y)
    return seen


def all_scopes():
    yield chainA(4)
    yield discrete_category(3)
    yield gallery_instantiate("zchain", "[-5..6]")
    yield gallery_instantiate("zneg", "[-12..-1]")
    yield gallery_instantiate("znegop", "[-12..-1]")


def test_reach_matches_bfs_oracle():
    for scope in all_scopes():
        c = scope_cat(scope)
        an = compute_preorder(scope)
        for x in c.objects:
            assert an.reach[x] == frozenset(bfs_reach(c, x))


def test_chain_example_distances():
    an = compute_preorder(chainA(3))
    assert an.leq(obj_id(0), obj_id(2))
    assert not an.leq(obj_id(2), obj_id(0))
    assert len(an.sim_classes) == 3
    assert an.distance(obj_id(0), obj_id(2)) == 2
    assert an.distance(obj_id(0), obj_id(0)) == 0


def test_zchain_distance_window():
    an = compute_preorder(gallery_instantiate("zchain", "[-3..3]"))
    assert an.distance(obj_id(-2), obj_id(1)) == 3


def test_one_object_category():
    an = compute_preorder(chainA(1))
    x = obj_id(0)
    assert an.sim(x, x) and an.distance(x, x) == 0


def test_classify_morphism():
    c = chainA(2)
    an = compute_preorder(c)
    assert classify_morphism(c, an, obj_id(0), obj_id(1), [0]) == "zero"
    assert classify_morphism(c, an, obj_id(0), obj_id(1), [1]) == "long"
    assert classify_morphism(c, an, obj_id(0), obj_id(0), [1]) == "short"
    with pytest.raises(UnknownHomSpace):
        classify_morphism(c, an, obj_id(1), obj_id(0), [1])


def test_long_morphisms_form_ideal():
    """compose(long, any) and compose(any, long) land in long-or-zero spans."""
    for scope in all_scopes():
        c = scope_cat(scope)
        an = compute_preorder(scope)
        for (x, y) in c.hom:
            for z in c.objects:
                if not c.hom_dim(y, z):
                    continue
                for i in range(c.hom_dim(y, z)):
                    for j in range(c.hom_dim(x, y)):
                        if an.sim(x, y) and an.sim(y, z):
                            continue  # both short: no claim
                        vec = c.compose_vec(x, y, z, i, j)
                        cls = classify_morphism(c, an, x, z, vec)
                        assert cls in ("zero", "long")


def test_interval_finiteness():
    assert check_interval_finiteness(chainA(5)).is_certified
    for name in ("zchain", "zneg", "znegop"):
        assert check_interval_finiteness(gallery_instantiate(name)).is_certified


def test_upper_lower_finite_declarations():
    z = gallery_instantiate("zchain")
    upper, lower = check_upper_lower_finite(z)
    assert upper.is_refuted and lower.is_refuted
    upper, lower = check_upper_lower_finite(gallery_instantiate("zneg"))
    assert upper.is_certified and lower.is_refuted and lower.witness == -1
    upper, lower = check_upper_lower_finite(gallery_instantiate("znegop"))
    assert upper.is_refuted and lower.is_certified and upper.witness == -1
    upper, lower = check_upper_lower_finite(chainA(4))
    assert upper.is_certified and lower.is_certified


def test_longest_strict_chain():
    assert longest_strict_chain(compute_preorder(chainA(4))) == 3
    assert longest_strict_chain(compute_preorder(discrete_category(3))) == 0
    assert longest_strict_chain(compute_preorder(gallery_instantiate("zneg"))) == 1


def test_short_subcategory_discrete_thin():
    c = scope_cat(gallery_instantiate("zneg"))
    an = compute_preorder(c)
    short = short_subcategory(c, an)
    # only identity homs survive: zneg objects are pairwise incomparable-~
    assert set(short.hom) == {(x, x) for x in c.objects}


def test_distance_semantics_flag():
    from dataclasses import replace

    an_fin = compute_preorder(chainA(3))
    assert an_fin.distances_exact
    # interval-certified windows keep exact distances: strict chains between
    # in-window endpoints cannot leave the interval
    w = gallery_instantiate("zchain")
    assert compute_preorder(w).distances_exact
    w_uncert = replace(w, meta=replace(w.meta, interval_certified=False))
    an_win = compute_preorder(w_uncert)
    assert not an_win.distances_exact
    assert an_win.to_json()["distance_semantics"] == "lower_bound"
