"""Frontiers: finite factorization sets below an object, and the decision
whether every object admits one (left strict local finiteness).

A frontier for y is a finite set X of objects strictly below y such that every
morphism z → y with z strictly below y and outside a finite exception set W
factors through members of X.  The verification is a rank check: the
composition pairing ⊕_{x∈X} Hom(x,y) ⊗ Hom(z,x) → Hom(z,y) must be
surjective.

On windows, out-of-window sources can never be checked computationally; a
window verdict is Certified only when the generator's declared down-set is
contained in the window or the generator declares a frontier covered by the
candidate.  Refutation uses a declared-growth criterion: the minimal
in-window member set must strictly grow over three window enlargements while
the down-set is declared infinite.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from locfin.lincat import LinCat, Window, obj_id, scope_cat
from locfin.linalg import Matrix, kernel, rank
from locfin.order import PreorderAnalysis, compute_preorder
from locfin.verdict import Verdict

__all__ = [
    "Frontier",
    "StandardFrontierTower",
    "MalformedFrontier",
    "TowerUnavailable",
    "verify_frontier",
    "find_standard_frontier",
    "check_left_strict",
    "degree_n_frontier",
]


class MalformedFrontier(ValueError):
    """A claimed member is not strictly below the target."""


class TowerUnavailable(ValueError):
    """Degree-n recursion needs a chosen frontier outside the tower's scope."""


@dataclass(frozen=True)
class Frontier:
    target: str
    members: frozenset
    exception: frozenset = frozenset()

    def to_json(self) -> dict:
        return {
            "target": str(self.target),
            "members": sorted(str(m) for m in self.members),
            "exception": sorted(str(w) for w in self.exception),
        }


def _surjectivity_witness(c: LinCat, members, z, y):
    """None if the factorization pairing onto Hom(z,y) is surjective, else a
    cokernel functional (coordinates on Hom(z,y))."""
    d = c.hom_dim(z, y)
    if d == 0:
        return None
    cols = []
    for x in sorted(members):
        dxy = c.hom_dim(x, y)
        dzx = c.hom_dim(z, x)
        for i in range(dxy):
            for j in range(dzx):
                cols.append(c.compose_vec(z, x, y, i, j))
    if cols:
        mat = Matrix.from_rows(c.field, cols, d).transpose()
        if rank(mat) == d:
            return None
        coker = kernel(mat.transpose())
    else:
        coker = kernel(Matrix.zeros(c.field, 1, d))
    return list(coker.basis[0])


def verify_frontier(scope: LinCat | Window, fr: Frontier,
                    analysis: PreorderAnalysis | None = None) -> Verdict:
    c = scope_cat(scope)
    if analysis is None:
        analysis = compute_preorder(scope)
    y = fr.target
    c.check_object(y)
    in_members = {x for x in fr.members if x in c.objects}
    for x in in_members:
        if not analysis.strict(x, y):
            raise MalformedFrontier((x, y))
    if not isinstance(scope, Window) and in_members != set(fr.members):
        raise MalformedFrontier("member outside the category")
    for z in c.objects:
        if z in fr.exception or not analysis.strict(z, y):
            continue
        witness = _surjectivity_witness(c, in_members, z, y)
        if witness is not None:
            return Verdict.refuted(witness=(str(z), [c.field.raw_to_json(v) for v in witness]),
                                   note="morphisms from this source do not factor through the members")
    if not isinstance(scope, Window):
        return Verdict.certified(note="all strict sources factor through the members")
    meta = scope.meta
    label = int(y)
    kind, payload = meta.downset(label)
    if kind == "finite" and all(scope.lo <= l <= scope.hi for l in payload):
        return Verdict.certified(note="declared down-set lies inside the window")
    if meta.declared_frontier is not None:
        declared = meta.declared_frontier(label)
        if declared is not None and {obj_id(l) for l in declared} <= set(fr.members):
            return Verdict.certified(note="generator-declared frontier is covered by the members")
    return Verdict.inconclusive(note="down-set extends beyond the window without a declared frontier")


def _min_inwindow_members(scope, y, analysis):
    """Smallest (by size, then lexicographic) member set passing all in-window
    factorization checks; None if even the full strict down-set fails."""
    c = scope_cat(scope)
    down = sorted(analysis.strict_down_set(y))
    for size in range(len(down) + 1):
        for combo in combinations(down, size):
            members = set(combo)
            ok = True
            for z in down:
                if _surjectivity_witness(c, members, z, y) is not None:
                    ok = False
                    break
            if ok:
                return frozenset(members)
    return None


def find_standard_frontier(scope: LinCat | Window, y,
                           analysis: PreorderAnalysis | None = None) -> Verdict:
    """Certified verdict carries data["frontier"]; Refuted carries a growth witness."""
    c = scope_cat(scope)
    c.check_object(y)
    if analysis is None:
        analysis = compute_preorder(scope)
    down = sorted(analysis.strict_down_set(y))
    if not isinstance(scope, Window):
        for size in range(len(down) + 1):
            for combo in combinations(down, size):
                fr = Frontier(y, frozenset(combo))
                if verify_frontier(scope, fr, analysis).is_certified:
                    return Verdict.certified(note="frontier found", frontier=fr)
        return Verdict.refuted(witness=str(y), note="no member set works (unreachable for finite scopes)")
    meta = scope.meta
    label = int(y)
    for size in range(len(down) + 1):
        for combo in combinations(down, size):
            fr = Frontier(y, frozenset(combo))
            if verify_frontier(scope, fr, analysis).is_certified:
                return Verdict.certified(note="frontier found", frontier=fr)
    # no in-window candidate is certifiable beyond the window
    if meta.declared_frontier is not None:
        declared = meta.declared_frontier(label)
        if declared is not None:
            fr = Frontier(y, frozenset(obj_id(l) for l in declared))
            if verify_frontier(scope, fr, analysis).is_certified:
                return Verdict.certified(
                    note="generator-declared frontier (members may lie outside the window)",
                    frontier=fr)
    kind, payload = meta.downset(label)
    if kind == "infinite" and scope.grow is not None:
        sizes = []
        current = scope
        for _ in range(3):
            an = compute_preorder(current)
            members = _min_inwindow_members(current, y, an)
            sizes.append((current.spec_string(), None if members is None else len(members)))
            current = scope.grow(current, 1)
        counts = [s for _, s in sizes]
        if all(s is not None for s in counts) and counts[0] < counts[1] < counts[2]:
            return Verdict.refuted(
                witness=str(y),
                note="minimal member set grows with the window and the down-set is declared infinite",
                growth=sizes)
        return Verdict.inconclusive(note="no certifiable frontier; growth not strict", growth=sizes)
    return Verdict.inconclusive(note="no certifiable frontier in this window")


@dataclass
class StandardFrontierTower:
    scope: object
    analysis: PreorderAnalysis
    chosen: dict  # object -> Frontier (empty exception)

    def to_json(self) -> dict:
        return {str(y): fr.to_json() for y, fr in sorted(self.chosen.items())}


def check_left_strict(scope: LinCat | Window,
                      analysis: PreorderAnalysis | None = None) -> Verdict:
    """Certified iff every object has a standard frontier; carries the tower."""
    if analysis is None:
        analysis = compute_preorder(scope)
    c = scope_cat(scope)
    chosen = {}
    inconclusive = None
    for y in c.objects:
        v = find_standard_frontier(scope, y, analysis)
        if v.is_refuted:
            return Verdict.refuted(witness=str(y), note=v.note, growth=v.data.get("growth"))
        if v.is_inconclusive:
            inconclusive = (y, v)
            continue
        chosen[y] = v.data["frontier"]
    if inconclusive is not None:
        y, v = inconclusive
        return Verdict.inconclusive(witness=str(y), note=v.note)
    tower = StandardFrontierTower(scope, analysis, chosen)
    return Verdict.certified(note="every object has a standard frontier", tower=tower)


def degree_n_frontier(tower: StandardFrontierTower, y, n: int) -> Frontier:
    """X_y^(n) with the accumulated exception ⋃_{i<n} (X_y^(i)) saturated under ~."""
    if n < 1:
        raise ValueError("degree must be ≥ 1")
    if y not in tower.chosen:
        raise TowerUnavailable(y)
    an = tower.analysis
    level = frozenset(tower.chosen[y].members)
    exception: set = set()
    for _ in range(n - 1):
        for x in level:
            exception |= set(an.sim_class(x)) if x in an.class_of else {x}
        nxt: set = set()
        for x in level:
            if x not in tower.chosen:
                raise TowerUnavailable(x)
            nxt |= set(tower.chosen[x].members)
        level = frozenset(nxt)
    return Frontier(y, level, frozenset(exception))
