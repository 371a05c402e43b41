"""Built-in example categories and modules, with declared window metadata.

Each entry produces either a finite category or a `Window` onto an infinite
integer-labelled family.  The declarations attached to windows (up-sets,
down-sets, frontiers, module supports) are the *only* channel through which
facts about the full family reach the analyses; everything else is computed
from the finite data.

Entries:
  * chainA(n)  — the thin chain 0 → 1 → ... → n−1 (finite).
  * discrete(n) — n objects, identity morphisms only (finite).
  * zchain     — all integers, Hom(m, n) one-dimensional iff m ≤ n.
  * zneg       — negative integers, the only non-identity arrows go to −1.
  * znegop     — the opposite of zneg: non-identity arrows leave −1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from locfin.coalg import UnrepresentableContramodule
from locfin.lincat import (
    GeneratorMeta,
    LeftModule,
    LinCat,
    ModuleMeta,
    RightModule,
    Window,
    direct_sum,
    obj_id,
)
from locfin.linalg import Matrix, Subspace, Tensor3
from locfin.scalar import GF, QQ, FieldDescriptor

__all__ = [
    "UnknownGallery",
    "BadWindow",
    "GalleryEntry",
    "GALLERY",
    "gallery_names",
    "gallery_instantiate",
    "thin_category",
    "chainA",
    "discrete_category",
    "zchain_window",
    "zneg_window",
    "znegop_window",
    "random_zchain_module",
    "zchain_module_N",
    "zchain_module_Nl",
    "zchain_module_Nl_sum",
    "zneg_right_module_single",
    "zneg_module_all_f",
    "zneg_pprime_contramodule",
]


class UnknownGallery(KeyError):
    """No built-in entry with that name."""


class BadWindow(ValueError):
    """Window specification could not be parsed or is out of range."""


F2 = GF(2)


def thin_category(f: FieldDescriptor, labels, leq: Callable[[int, int], bool]) -> LinCat:
    """Category with Hom one-dimensional where leq holds, zero otherwise."""
    labels = sorted(labels)
    objs = tuple(obj_id(n) for n in labels)
    hom = {}
    compose = {}
    one = f.one()
    for a in labels:
        for b in labels:
            if leq(a, b):
                hom[(obj_id(a), obj_id(b))] = 1
    for a in labels:
        for b in labels:
            if not leq(a, b):
                continue
            for c in labels:
                if leq(b, c):
                    key = (obj_id(a), obj_id(b), obj_id(c))
                    compose[key] = Tensor3.from_dict(f, (1, 1, 1), {(0, 0, 0): one})
    identity = {obj_id(a): (one,) for a in labels}
    return LinCat(f, objs, hom, compose, identity)


def chainA(n: int, f: FieldDescriptor = F2) -> LinCat:
    """The chain with n objects 0 ≤ 1 ≤ ... ≤ n−1."""
    if n < 1:
        raise BadWindow(f"chain length must be ≥ 1, got {n}")
    return thin_category(f, range(n), lambda a, b: a <= b)


def discrete_category(n: int, f: FieldDescriptor = F2) -> LinCat:
    """n objects with identity morphisms only."""
    if n < 1:
        raise BadWindow(f"object count must be ≥ 1, got {n}")
    return thin_category(f, range(n), lambda a, b: a == b)


# ---------------------------------------------------------------------------
# windows onto the infinite families


def zchain_window(lo: int, hi: int, f: FieldDescriptor = F2) -> Window:
    """All integers with Hom(m, n) one-dimensional iff m ≤ n, truncated."""
    if lo > hi:
        raise BadWindow(f"empty window {lo}..{hi}")
    cat = thin_category(f, range(lo, hi + 1), lambda a, b: a <= b)
    meta = GeneratorMeta(
        interval_certified=True,
        upset=lambda n: ModuleMeta.infinite(f"every m ≥ {n} lies above {n}"),
        downset=lambda n: ModuleMeta.infinite(f"every m ≤ {n} lies below {n}"),
        declared_frontier=lambda n: frozenset({n - 1}),
        note="total order on all integers; intervals are finite",
    )
    return Window(
        cat=cat,
        name="zchain",
        lo=lo,
        hi=hi,
        meta=meta,
        grow=lambda w, k: zchain_window(w.lo - k, w.hi + k, f),
        closure_note="interval-closed: no composite through out-of-window objects "
        "lands back in the window",
        open_ends=("lo", "hi"),
    )


def zneg_window(lo: int, hi: int = -1, f: FieldDescriptor = F2) -> Window:
    """Negative integers; the only non-identity hom spaces are Hom(−n, −1)."""
    if hi != -1:
        raise BadWindow("the upper end of a zneg window is pinned at -1")
    if lo > hi:
        raise BadWindow(f"empty window {lo}..{hi}")
    if hi > -1:
        raise BadWindow("zneg objects are negative integers")
    cat = thin_category(f, range(lo, hi + 1), lambda a, b: a == b or b == -1)

    def upset(n):
        return ModuleMeta.finite({n} if n == -1 else {n, -1})

    def downset(n):
        if n == -1:
            return ModuleMeta.infinite("every negative integer maps to -1")
        return ModuleMeta.finite({n})

    meta = GeneratorMeta(
        interval_certified=True,
        upset=upset,
        downset=downset,
        declared_frontier=lambda n: None,
        note="upper finite; the down-set of -1 is everything",
    )
    return Window(
        cat=cat,
        name="zneg",
        lo=lo,
        hi=hi,
        meta=meta,
        grow=lambda w, k: zneg_window(w.lo - k, -1, f),
        closure_note="interval-closed: all intervals have at most two elements",
        open_ends=("lo",),
    )


def znegop_window(lo: int, hi: int = -1, f: FieldDescriptor = F2) -> Window:
    """Opposite family: the only non-identity hom spaces are Hom(−1, −n)."""
    if hi != -1:
        raise BadWindow("the upper end of a znegop window is pinned at -1")
    if lo > hi:
        raise BadWindow(f"empty window {lo}..{hi}")
    cat = thin_category(f, range(lo, hi + 1), lambda a, b: a == b or a == -1)

    def upset(n):
        if n == -1:
            return ModuleMeta.infinite("-1 maps to every negative integer")
        return ModuleMeta.finite({n})

    def downset(n):
        return ModuleMeta.finite({n} if n == -1 else {n, -1})

    meta = GeneratorMeta(
        interval_certified=True,
        upset=upset,
        downset=downset,
        declared_frontier=lambda n: frozenset() if n == -1 else frozenset({-1}),
        note="lower finite; the up-set of -1 is everything",
    )
    return Window(
        cat=cat,
        name="znegop",
        lo=lo,
        hi=hi,
        meta=meta,
        grow=lambda w, k: znegop_window(w.lo - k, -1, f),
        closure_note="interval-closed: all intervals have at most two elements",
        open_ends=("lo",),
    )


# ---------------------------------------------------------------------------
# gallery modules


def zchain_module_N(window: Window) -> LeftModule:
    """All components one-dimensional, every action an isomorphism.

    Over the full integer chain this module arises neither from a comodule
    nor from a contramodule: both support directions are declared infinite,
    and the tail image at every object is everything.
    """
    _require(window, "zchain")
    f = window.cat.field
    one = Matrix.identity(f, 1)
    dims = {x: 1 for x in window.cat.objects}
    action = {(x, y): (one,) for (x, y) in window.cat.hom}
    m = LeftModule(window.cat, dims, action)
    m.meta = ModuleMeta(
        note="components k everywhere, transition maps the identity",
        comodule_supports=lambda n: ModuleMeta.infinite(
            f"the action map into every m ≥ {n} is nonzero"),
        contramodule_supports=lambda n: ModuleMeta.infinite(
            f"the action map from every m ≤ {n} is nonzero"),
        tail_image=lambda y: Subspace.full(f, 1),
        uniform_supports=True,
    )
    return m


def zchain_module_Nl(window: Window, l: int) -> LeftModule:
    """One-dimensional components on [−l..l], identity transitions, zero outside."""
    _require(window, "zchain")
    if l < 0:
        raise BadWindow(f"l must be ≥ 0, got {l}")
    f = window.cat.field
    one = Matrix.identity(f, 1)
    inside = lambda n: -l <= n <= l
    dims = {x: (1 if inside(int(x)) else 0) for x in window.cat.objects}
    action = {}
    for (x, y) in window.cat.hom:
        if inside(int(x)) and inside(int(y)):
            action[(x, y)] = (one,)
    m = LeftModule(window.cat, dims, action)
    m.meta = ModuleMeta(
        note=f"supported on [-{l}..{l}]",
        comodule_supports=lambda n: ModuleMeta.finite(
            range(max(n, -l), l + 1) if inside(n) else ()),
        contramodule_supports=lambda n: ModuleMeta.finite(
            range(-l, min(n, l) + 1) if inside(n) else ()),
        tail_image=lambda y: Subspace.zero(f, dims.get(y, 0)),
        uniform_supports=True,
    )
    return m


def zchain_module_Nl_sum(window: Window, lmax: int) -> LeftModule:
    """⊕_{l ≤ lmax} of the truncated modules: liftable, but the support sets
    of the full direct sum over all l admit no uniform bound."""
    _require(window, "zchain")
    total = zchain_module_Nl(window, 0)
    for l in range(1, lmax + 1):
        total = direct_sum(total, zchain_module_Nl(window, l))
    f = window.cat.field
    per_source = {}
    per_target = {}
    for (x, y) in total.action:
        per_source.setdefault(int(x), set()).add(int(y))
        per_target.setdefault(int(y), set()).add(int(x))
    total.meta = ModuleMeta(
        note="finite truncation of an infinite direct sum whose supports grow with l",
        comodule_supports=lambda n: ModuleMeta.finite(per_source.get(n, set())),
        contramodule_supports=lambda n: ModuleMeta.finite(per_target.get(n, set())),
        tail_image=lambda y: Subspace.zero(f, total.dim(y)),
        uniform_supports=False,
    )
    return total


def zneg_right_module_single(window: Window) -> RightModule:
    """Right module with a single nonzero non-identity action block (−2, −1)."""
    _require(window, "zneg")
    if window.lo > -2:
        raise BadWindow("window must contain -2")
    f = window.cat.field
    one = Matrix.identity(f, 1)
    a, b = obj_id(-2), obj_id(-1)
    dims = {x: 0 for x in window.cat.objects}
    dims[a] = dims[b] = 1
    m = RightModule(window.cat, dims, {(a, b): (one,), (a, a): (one,), (b, b): (one,)})
    m.meta = ModuleMeta(
        note="only the map from -2 acts",
        comodule_supports=lambda n: ModuleMeta.finite({-1} if n == -2 else ()),
        contramodule_supports=lambda n: ModuleMeta.finite({-2} if n == -1 else ()),
        tail_image=lambda y: Subspace.zero(f, dims.get(y, 0)),
    )
    return m


def zneg_module_all_f(window: Window) -> LeftModule:
    """Left module with all maps into −1 acting as the identity.

    The per-target support at −1 is declared infinite: over the full family
    this module has no finite-support contramodule presentation, although the
    contraaction exists abstractly (the presentation-level obstruction behind
    the failure of contramodule recognition without frontiers).
    """
    _require(window, "zneg")
    f = window.cat.field
    one = Matrix.identity(f, 1)
    dims = {x: 1 for x in window.cat.objects}
    action = {(x, y): (one,) for (x, y) in window.cat.hom}
    m = LeftModule(window.cat, dims, action)
    m.meta = ModuleMeta(
        note="every map into -1 acts as the identity",
        comodule_supports=lambda n: ModuleMeta.finite({n} if n == -1 else {n, -1}),
        contramodule_supports=lambda n: (
            ModuleMeta.infinite("every negative integer acts nonzero into -1")
            if n == -1 else ModuleMeta.finite({n})),
        tail_image=lambda y: (Subspace.full(f, 1) if int(y) == -1
                              else Subspace.zero(f, dims.get(y, 0))),
    )
    return m


def random_zchain_module(window: Window, rng, max_dim: int = 2,
                         support: Optional[tuple] = None) -> LeftModule:
    """Random left module over a zchain window.

    The window category is thin, so a module is determined by one arbitrary
    step map per consecutive pair; all other action blocks are the forced
    products.  `support` restricts the nonzero components to an inclusive
    integer range strictly inside the window.
    """
    _require(window, "zchain")
    f = window.cat.field
    lo, hi = window.lo, window.hi
    if support is None:
        support = (lo + 1, hi - 1)
    slo, shi = support
    if slo < lo or shi > hi:
        raise BadWindow("support must lie inside the window")

    def rand_scalar():
        if f.p is not None:
            return f.from_int(rng.randrange(f.p))
        return f.from_int(rng.randrange(-2, 3))

    dims = {}
    for n in range(lo, hi + 1):
        dims[obj_id(n)] = rng.randrange(max_dim + 1) if slo <= n <= shi else 0
    steps = {}
    for n in range(lo, hi):
        r, c = dims[obj_id(n + 1)], dims[obj_id(n)]
        grid = [[rand_scalar() for _ in range(c)] for _ in range(r)]
        steps[n] = (Matrix.from_rows(f, grid, c) if r else Matrix.zeros(f, 0, c))
    action = {}
    for a in range(lo, hi + 1):
        x = obj_id(a)
        if dims[x]:
            action[(x, x)] = (Matrix.identity(f, dims[x]),)
        prod = Matrix.identity(f, dims[x])
        for b in range(a + 1, hi + 1):
            prod = steps[b - 1] @ prod
            y = obj_id(b)
            if dims[x] and dims[y] and not prod.is_zero():
                action[(x, y)] = (prod,)
    return LeftModule(window.cat, dims, action)


def zneg_pprime_contramodule(window: Window):
    """Attempt the contramodule whose contraaction evaluates a functional on
    the full product of components.  Such a functional is not determined by
    finitely many blocks, so no finite-support presentation exists."""
    _require(window, "zneg")
    raise UnrepresentableContramodule(
        "the contraaction at -1 pairs with a functional on an infinite product; "
        "it has no finite-support block presentation")


def _require(window: Window, name: str) -> None:
    if not isinstance(window, Window) or window.name != name:
        raise BadWindow(f"expected a {name} window")


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class GalleryEntry:
    name: str
    summary: str
    default_spec: str
    instantiate: Callable[[str], LinCat | Window]
    notes: tuple = ()  # (claim, expected verdict kind) pairs, checked in tests


def _parse_range(spec: str) -> tuple[int, int]:
    s = spec.strip()
    if s.startswith("[") and s.endswith("]"):
        s = s[1:-1]
    if ".." not in s:
        raise BadWindow(f"expected lo..hi, got {spec!r}")
    lo_s, hi_s = s.split("..", 1)
    try:
        return int(lo_s), int(hi_s)
    except ValueError as exc:
        raise BadWindow(f"bad window endpoints in {spec!r}") from exc


def _parse_count(spec: str) -> int:
    try:
        return int(spec.strip())
    except ValueError as exc:
        raise BadWindow(f"expected an integer, got {spec!r}") from exc


GALLERY = {
    "chainA": GalleryEntry(
        name="chainA",
        summary="finite chain 0 → 1 → ... → n-1",
        default_spec="3",
        instantiate=lambda spec: chainA(_parse_count(spec)),
        notes=(
            ("validate_category", "certified"),
            ("check_left_strict", "certified"),
        ),
    ),
    "discrete": GalleryEntry(
        name="discrete",
        summary="n objects, identity morphisms only",
        default_spec="4",
        instantiate=lambda spec: discrete_category(_parse_count(spec)),
        notes=(
            ("validate_category", "certified"),
            ("check_left_strict", "certified"),
        ),
    ),
    "zchain": GalleryEntry(
        name="zchain",
        summary="all integers, Hom(m,n) one-dimensional iff m ≤ n",
        default_spec="[-3..3]",
        instantiate=lambda spec: zchain_window(*_parse_range(spec)),
        notes=(
            ("validate_category", "certified"),
            ("check_left_strict", "certified"),
            ("upper_finite", "refuted"),
            ("lower_finite", "refuted"),
        ),
    ),
    "zneg": GalleryEntry(
        name="zneg",
        summary="negative integers, non-identity arrows into -1 only",
        default_spec="[-6..-1]",
        instantiate=lambda spec: zneg_window(*_parse_range(spec)),
        notes=(
            ("validate_category", "certified"),
            ("check_left_strict", "refuted"),
            ("upper_finite", "certified"),
            ("lower_finite", "refuted"),
        ),
    ),
    "znegop": GalleryEntry(
        name="znegop",
        summary="negative integers, non-identity arrows out of -1 only",
        default_spec="[-6..-1]",
        instantiate=lambda spec: znegop_window(*_parse_range(spec)),
        notes=(
            ("validate_category", "certified"),
            ("check_left_strict", "certified"),
            ("upper_finite", "refuted"),
            ("lower_finite", "certified"),
        ),
    ),
}


def gallery_names() -> list[str]:
    return sorted(GALLERY)


def gallery_instantiate(name: str, window_spec: Optional[str] = None) -> LinCat | Window:
    entry = GALLERY.get(name)
    if entry is None:
        raise UnknownGallery(name)
    return entry.instantiate(window_spec if window_spec is not None else entry.default_spec)
