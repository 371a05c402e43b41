"""Translation between module data and comodule/contramodule data.

Because co/contraaction blocks are stored in the same shape as module action
blocks (one matrix per basis vector, per object pair), the translation
functors are exact repackagings and round trips are byte-identical.  The
mathematical content is in the support bookkeeping: which direction of
support must be finite, what that means over a window, and when a declared
infinite support refutes liftability.

Soundness rule: NotLiftable / Refuted over an infinite family is only ever
asserted from declared support metadata, never inferred from a finite window.
Windows without declarations whose support touches an open window end yield
the window_leak decision.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from locfin.coalg import (
    Comodule,
    Contramodule,
    GradedCoalgebra,
    build_coalgebra,
)
from locfin.lincat import (
    LeftModule,
    LinCat,
    ModuleMeta,
    RightModule,
    Window,
    obj_id,
    scope_cat,
    submodule,
)
from locfin.linalg import Subspace
from locfin.frontier import check_left_strict
from locfin.verdict import Verdict

__all__ = [
    "LiftReport",
    "LIFTABLE",
    "NOT_LIFTABLE",
    "WINDOW_LEAK",
    "HypothesisNotCertified",
    "category_of",
    "upsilon",
    "theta",
    "lift_to_comodule",
    "lift_to_contramodule",
    "is_contrafinite",
    "is_cofinite",
    "declare_zero_extension",
    "minimal_big_submodule",
    "is_big_submodule",
    "dualize_module",
    "dualize_comodule",
    "dualize_contramodule",
    "anti_equivalence_roundtrip",
    "single_object_probe",
]

LIFTABLE = "liftable"
NOT_LIFTABLE = "not_liftable"
WINDOW_LEAK = "window_leak"


class HypothesisNotCertified(ValueError):
    """An operation's standing hypothesis is not certified on this scope."""


@dataclass
class LiftReport:
    decision: str
    lifted: Optional[Comodule | Contramodule] = None
    supports: Optional[dict] = None
    witness: object = None
    note: str = ""

    def exit_code(self) -> int:
        return {LIFTABLE: 0, NOT_LIFTABLE: 2, WINDOW_LEAK: 3}[self.decision]

    def to_json(self) -> dict:
        out = {"decision": self.decision}
        if self.supports is not None:
            out["supports"] = {str(k): sorted(str(v) for v in vals)
                               for k, vals in sorted(self.supports.items())}
        if self.witness is not None:
            out["witness"] = str(self.witness)
        if self.note:
            out["note"] = self.note
        return out


def category_of(g: GradedCoalgebra) -> LinCat:
    """The category presentation a counital graded coalgebra was built from."""
    if not g.counital:
        raise ValueError("only counital coalgebras determine a category")
    return LinCat(
        field=g.field,
        objects=g.objects,
        hom=dict(g.components),
        compose=dict(g.comult),
        identity={x: g.counit[x] for x in g.objects},
    )


def upsilon(m: Comodule) -> LeftModule | RightModule:
    """Reread coaction blocks as module action blocks."""
    c = category_of(m.coalg)
    cls = LeftModule if m.side == "left" else RightModule
    return cls(c, dict(m.dims), dict(m.blocks_map))


def theta(p: Contramodule) -> LeftModule | RightModule:
    """Reread contraaction blocks as module action blocks."""
    c = category_of(p.coalg)
    cls = LeftModule if p.side == "left" else RightModule
    return cls(c, dict(p.dims), dict(p.blocks_map))


def _window_boundary(scope: Window) -> set:
    out = set()
    if "lo" in scope.open_ends:
        out.add(scope.lo)
    if "hi" in scope.open_ends:
        out.add(scope.hi)
    return out


def _support_sets(m, per_source: bool) -> dict:
    """Nonzero-block supports: per_source groups by x (values y), else by y."""
    out: dict = {}
    for (x, y) in m.action:
        if per_source:
            out.setdefault(x, set()).add(y)
        else:
            out.setdefault(y, set()).add(x)
    return out


def _declared_facts(m, scope, comodule_direction: bool):
    if not isinstance(scope, Window) or m.meta is None:
        return None
    fn = m.meta.comodule_supports if comodule_direction else m.meta.contramodule_supports
    if fn is None:
        return None
    return {label: fn(label) for label in range(scope.lo, scope.hi + 1)}


def lift_to_comodule(m: LeftModule | RightModule, scope: LinCat | Window | None = None,
                     coalgebra: GradedCoalgebra | None = None) -> LiftReport:
    """Decide and construct the comodule with the same blocks.

    Left modules need per-source supports Y_x finite; right modules the
    mirrored per-target supports.  Over a finite category this always holds;
    over a window the verdict follows the declared metadata.
    """
    scope = scope if scope is not None else m.cat
    per_source = isinstance(m, LeftModule)
    supports = _support_sets(m, per_source)
    facts = _declared_facts(m, scope, comodule_direction=True)
    if facts is not None:
        for label, (kind, payload) in sorted(facts.items()):
            if kind == "infinite":
                return LiftReport(NOT_LIFTABLE, supports=supports, witness=label,
                                  note=f"declared infinite support: {payload}")
    elif isinstance(scope, Window):
        boundary = _window_boundary(scope)
        touched = {x for pair in m.action for x in pair}
        hit = sorted(int(t) for t in touched if int(t) in boundary)
        if hit:
            return LiftReport(WINDOW_LEAK, supports=supports, witness=hit[0],
                              note="support touches an open window end and no support is declared")
    g = coalgebra if coalgebra is not None else build_coalgebra(scope)
    lifted = Comodule(g, dict(m.dims), dict(m.action), side=m.side)
    if upsilon(lifted) != m:
        raise AssertionError("round trip failed (library tripwire)")
    note = ""
    if facts is not None and m.meta is not None and not m.meta.uniform_supports:
        note = "declared supports are finite but grow without uniform bound"
    return LiftReport(LIFTABLE, lifted=lifted, supports=supports, note=note)


def lift_to_contramodule(m: LeftModule | RightModule, scope: LinCat | Window | None = None,
                         coalgebra: GradedCoalgebra | None = None) -> LiftReport:
    """Decide and construct the contramodule with the same blocks.

    Left modules need per-target supports Z_y finite.  This direction needs
    no frontier hypothesis: the construction works over any window.
    """
    scope = scope if scope is not None else m.cat
    per_source = not isinstance(m, LeftModule)
    supports = _support_sets(m, per_source)
    facts = _declared_facts(m, scope, comodule_direction=False)
    if facts is not None:
        for label, (kind, payload) in sorted(facts.items()):
            if kind == "infinite":
                return LiftReport(NOT_LIFTABLE, supports=supports, witness=label,
                                  note=f"declared infinite support: {payload}")
    elif isinstance(scope, Window):
        boundary = _window_boundary(scope)
        touched = {x for pair in m.action for x in pair}
        hit = sorted(int(t) for t in touched if int(t) in boundary)
        if hit:
            return LiftReport(WINDOW_LEAK, supports=supports, witness=hit[0],
                              note="support touches an open window end and no support is declared")
    g = coalgebra if coalgebra is not None else build_coalgebra(scope)
    lifted = Contramodule(g, dict(m.dims), dict(m.action), side=m.side)
    if theta(lifted) != m:
        raise AssertionError("round trip failed (library tripwire)")
    return LiftReport(LIFTABLE, lifted=lifted, supports=supports)


def is_contrafinite(m: LeftModule, scope: LinCat | Window | None = None) -> Verdict:
    """Per-target supports A_y = {x : some action block (x,y) ≠ 0} all finite."""
    scope = scope if scope is not None else m.cat
    supports = _support_sets(m, per_source=False)
    sets = {str(y): sorted(str(x) for x in s) for y, s in supports.items()}
    facts = _declared_facts(m, scope, comodule_direction=False)
    if facts is not None:
        for label, (kind, payload) in sorted(facts.items()):
            if kind == "infinite":
                return Verdict.refuted(witness=label, note=payload, supports=sets)
        return Verdict.certified(note="declared per-target supports all finite", supports=sets)
    if isinstance(scope, Window):
        boundary = _window_boundary(scope)
        touched = {x for pair in m.action for x in pair}
        if any(int(t) in boundary for t in touched):
            return Verdict.inconclusive(note="support touches an open window end", supports=sets)
        return Verdict.certified(note="window-relative: support is interior", supports=sets)
    return Verdict.certified(note="finite category", supports=sets)


def is_cofinite(n: RightModule, scope: LinCat | Window | None = None) -> Verdict:
    """Per-target supports A_y = {x : some action block (x,y) ≠ 0} all finite."""
    scope = scope if scope is not None else n.cat
    supports = _support_sets(n, per_source=False)
    sets = {str(y): sorted(str(x) for x in s) for y, s in supports.items()}
    facts = _declared_facts(n, scope, comodule_direction=False)
    if facts is not None:
        for label, (kind, payload) in sorted(facts.items()):
            if kind == "infinite":
                return Verdict.refuted(witness=label, note=payload, supports=sets)
        return Verdict.certified(note="declared per-target supports all finite", supports=sets)
    if isinstance(scope, Window):
        boundary = _window_boundary(scope)
        touched = {x for pair in n.action for x in pair}
        if any(int(t) in boundary for t in touched):
            return Verdict.inconclusive(note="support touches an open window end", supports=sets)
        return Verdict.certified(note="window-relative: support is interior", supports=sets)
    return Verdict.certified(note="finite category", supports=sets)


def declare_zero_extension(m, scope: Window):
    """Attach metadata asserting the module is extended by zero beyond its
    nonzero blocks (legitimate whenever the window is interval-closed)."""
    per_source = _support_sets(m, per_source=True)
    per_target = _support_sets(m, per_source=False)
    f = m.cat.field

    def como(label):
        return ModuleMeta.finite(int(v) for v in per_source.get(obj_id(label), set()))

    def contra(label):
        return ModuleMeta.finite(int(v) for v in per_target.get(obj_id(label), set()))

    m.meta = ModuleMeta(
        note="zero beyond the stored blocks",
        comodule_supports=como,
        contramodule_supports=contra,
        tail_image=lambda y: Subspace.zero(f, m.dim(y)),
    )
    return m


def _tail_subspace(m, y) -> Subspace:
    if m.meta is not None and m.meta.tail_image is not None:
        return m.meta.tail_image(y)
    return Subspace.zero(m.cat.field, m.dim(y))


def minimal_big_submodule(m: LeftModule, scope: LinCat | Window | None = None):
    """The smallest submodule with contrafinite quotient.

    Seeds each component with the declared tail image (the stable sum of
    action images from outside every finite object set), closes under the
    action, and returns (submodule, subspaces, inclusions).
    """
    scope = scope if scope is not None else m.cat
    c = m.cat
    f = c.field
    spaces = {x: _tail_subspace(m, x) for x in c.objects}
    changed = True
    while changed:
        changed = False
        for (x, y), mats in m.action.items():
            for mat in mats:
                pushed = [mat.apply(list(row)) for row in spaces[x].basis]
                if pushed:
                    new = spaces[y].sum(Subspace.from_vectors(f, m.dim(y), pushed))
                    if new.dim != spaces[y].dim:
                        spaces[y] = new
                        changed = True
    sub, incl = submodule(m, spaces)
    if not is_big_submodule(m, spaces, scope):
        raise AssertionError("closure of the tail is not big (library tripwire)")
    return sub, spaces, incl


def is_big_submodule(m: LeftModule, spaces: dict, scope: LinCat | Window | None = None) -> bool:
    """Whether the (action-closed) subspace family has contrafinite quotient.

    The quotient is contrafinite exactly when every declared tail image is
    absorbed: tail(y) ⊆ spaces[y] for all y; plus closure under the action.
    """
    scope = scope if scope is not None else m.cat
    c = m.cat
    for x in c.objects:
        s = spaces.get(x, Subspace.zero(c.field, m.dim(x)))
        if not s.contains(_tail_subspace(m, x)):
            return False
    for (x, y), mats in m.action.items():
        s_x = spaces.get(x, Subspace.zero(c.field, m.dim(x)))
        s_y = spaces.get(y, Subspace.zero(c.field, m.dim(y)))
        for mat in mats:
            for row in s_x.basis:
                if not s_y.contains_vector(mat.apply(list(row))):
                    return False
    return True


def dualize_module(m: LeftModule | RightModule):
    """Componentwise vector-space dual: transpose every block, flip variance."""
    other = RightModule if isinstance(m, LeftModule) else LeftModule
    blocks = {key: tuple(mat.transpose() for mat in mats) for key, mats in m.action.items()}
    return other(m.cat, dict(m.dims), blocks)


def dualize_comodule(n: Comodule) -> Contramodule:
    """Dual of a right comodule: the left contramodule on the dual components."""
    if n.side != "right":
        raise ValueError("dualization to a contramodule starts from a right comodule")
    blocks = {key: tuple(mat.transpose() for mat in mats) for key, mats in n.blocks_map.items()}
    return Contramodule(n.coalg, dict(n.dims), blocks, side="left")


def dualize_contramodule(p: Contramodule) -> Comodule:
    """Inverse transpose: the right comodule whose dual is the given contramodule."""
    if p.side != "left":
        raise ValueError("expected a left contramodule")
    blocks = {key: tuple(mat.transpose() for mat in mats) for key, mats in p.blocks_map.items()}
    return Comodule(p.coalg, dict(p.dims), blocks, side="right")


def anti_equivalence_roundtrip(scope: LinCat | Window, p: Contramodule,
                               left_strict: Verdict | None = None) -> Comodule:
    """The right comodule N with N* = p; requires certified left strictness."""
    if left_strict is None:
        left_strict = check_left_strict(scope)
    if not left_strict.is_certified:
        raise HypothesisNotCertified("left strict local finiteness is not certified on this scope")
    return dualize_contramodule(p)


def single_object_probe(m: LeftModule, scope: LinCat | Window | None = None) -> dict:
    """Observations for the open question whether a finite-dimensional
    component forces finite per-target support at that object.  Reports data;
    asserts nothing."""
    scope = scope if scope is not None else m.cat
    supports = _support_sets(m, per_source=False)
    return {
        str(y): {"component_dim": m.dim(y), "support_size": len(supports.get(y, set())),
                 "tail_dim": _tail_subspace(m, y).dim}
        for y in m.cat.objects
    }
