"""Frontier verification and search: self-consistency, tower and distance
properties, and the window growth refutation."""

import pytest

from locfin.frontier import (
    Frontier,
    MalformedFrontier,
    TowerUnavailable,
    check_left_strict,
    degree_n_frontier,
    find_standard_frontier,
    verify_frontier,
)
from locfin.gallery import chainA, discrete_category, gallery_instantiate
from locfin.lincat import obj_id, scope_cat
from locfin.order import compute_preorder


def finite_scopes():
    yield chainA(4)
    yield discrete_category(3)


def window_scopes():
    yield gallery_instantiate("zchain", "[-4..4]")
    yield gallery_instantiate("zneg", "[-6..-1]")
    yield gallery_instantiate("znegop", "[-6..-1]")


def test_found_frontiers_pass_verification_everywhere():
    for scope in list(finite_scopes()) + list(window_scopes()):
        an = compute_preorder(scope)
        for y in scope_cat(scope).objects:
            v = find_standard_frontier(scope, y, an)
            if v.is_certified:
                assert verify_frontier(scope, v.data["frontier"], an).is_certified


def test_minimality_on_chain():
    c = chainA(3)
    an = compute_preorder(c)
    v = find_standard_frontier(c, obj_id(2), an)
    assert v.is_certified
    # everything into 2 factors through 1: the singleton {1} is the minimal choice
    assert set(v.data["frontier"].members) == {obj_id(1)}


def test_verify_rejects_non_strict_member():
    c = chainA(3)
    with pytest.raises(MalformedFrontier):
        verify_frontier(c, Frontier(obj_id(1), frozenset({obj_id(2)})))


def test_verify_refutes_insufficient_members():
    w = gallery_instantiate("zneg", "[-4..-1]")
    # the empty set cannot absorb the in-window arrows into -1
    v = verify_frontier(w, Frontier(obj_id(-1), frozenset()))
    assert v.is_refuted


def test_zneg_growth_refutation():
    w = gallery_instantiate("zneg", "[-6..-1]")
    v = find_standard_frontier(w, obj_id(-1))
    assert v.is_refuted
    sizes = [s for _, s in v.data["growth"]]
    assert sizes == sorted(sizes) and len(set(sizes)) == 3


def test_zneg_other_objects_certified_empty():
    w = gallery_instantiate("zneg", "[-6..-1]")
    for n in range(-6, -1):
        v = find_standard_frontier(w, obj_id(n))
        assert v.is_certified
        assert v.data["frontier"].members == frozenset()


def test_left_strict_decisions():
    assert check_left_strict(chainA(4)).is_certified
    assert check_left_strict(gallery_instantiate("zchain")).is_certified
    assert check_left_strict(gallery_instantiate("znegop")).is_certified
    v = check_left_strict(gallery_instantiate("zneg"))
    assert v.is_refuted and v.witness == obj_id(-1)


def test_tower_property_degree_n():
    """Every degree-n frontier passes verification (with its exception) on the
    window's finite category, and members sit at distance ≥ n."""
    w = gallery_instantiate("zchain", "[-6..6]")
    an = compute_preorder(w)
    v = check_left_strict(w, an)
    assert v.is_certified
    tower = v.data["tower"]
    cat = scope_cat(w)
    for y in [obj_id(k) for k in range(0, 5)]:
        for n in range(1, 5):
            fr = degree_n_frontier(tower, y, n)
            assert verify_frontier(cat, fr, an).is_certified
            for x in fr.members:
                assert an.distance(x, y) is not None and an.distance(x, y) >= n


def test_tower_unavailable_below_window():
    w = gallery_instantiate("zchain", "[-2..2]")
    v = check_left_strict(w)
    tower = v.data["tower"]
    with pytest.raises(TowerUnavailable):
        # the degree-5 frontier of the top object needs frontiers below the window
        degree_n_frontier(tower, obj_id(2), 6)


def test_discrete_frontiers_trivial():
    c = discrete_category(3)
    an = compute_preorder(c)
    for y in c.objects:
        v = find_standard_frontier(c, y, an)
        assert v.is_certified and v.data["frontier"].members == frozenset()
