"""The reachability preorder on objects, and the finiteness predicates built on it.

x ≼ y when a chain of composable nonzero morphisms leads from x to y; x ~ y
when both directions hold; x ≺ y when only the forward direction does.  For a
based presentation, a nonzero morphism space is exactly hom_dim ≥ 1, so ≼ is
reflexive-transitive closure of that digraph and ~ classes are its strongly
connected components.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from locfin.lincat import LinCat, Window, scope_cat
from locfin.verdict import Verdict

__all__ = [
    "PreorderAnalysis",
    "UnknownHomSpace",
    "compute_preorder",
    "classify_morphism",
    "check_interval_finiteness",
    "check_upper_lower_finite",
    "longest_strict_chain",
    "SHORT",
    "LONG",
    "ZERO",
]

SHORT = "short"
LONG = "long"
ZERO = "zero"


class UnknownHomSpace(KeyError):
    """Morphism classification requested for an unknown hom space."""


@dataclass
class PreorderAnalysis:
    objects: tuple
    reach: dict  # x -> frozenset of y with x ≼ y
    sim_classes: tuple  # tuple of frozensets, in first-member order
    class_of: dict
    distance_table: dict  # (x, y) with x ≼ y -> longest strict chain length
    distances_exact: bool = True

    def leq(self, x, y) -> bool:
        return y in self.reach[x]

    def sim(self, x, y) -> bool:
        return self.class_of[x] == self.class_of[y]

    def strict(self, x, y) -> bool:
        return self.leq(x, y) and not self.leq(y, x)

    def distance(self, x, y) -> Optional[int]:
        return self.distance_table.get((x, y))

    def strict_down_set(self, y) -> list:
        return [z for z in self.objects if self.strict(z, y)]

    def strict_up_set(self, x) -> list:
        return [y for y in self.objects if self.strict(x, y)]

    def sim_class(self, x) -> frozenset:
        return self.sim_classes[self.class_of[x]]

    def to_json(self) -> dict:
        return {
            "relations": {str(x): sorted(str(y) for y in self.reach[x]) for x in self.objects},
            "sim_classes": [sorted(str(o) for o in cls) for cls in self.sim_classes],
            "distance": {f"{x}|{y}": d for (x, y), d in sorted(self.distance_table.items())},
            "distance_semantics": "exact" if self.distances_exact else "lower_bound",
        }


def compute_preorder(scope: LinCat | Window) -> PreorderAnalysis:
    c = scope_cat(scope)
    objs = c.objects
    succ = {x: {y for y in objs if c.hom_dim(x, y) >= 1} | {x} for x in objs}
    # reflexive-transitive closure (small object sets; simple saturation)
    reach = {x: set(s) for x, s in succ.items()}
    changed = True
    while changed:
        changed = False
        for x in objs:
            new = set(reach[x])
            for y in reach[x]:
                new |= reach[y]
            if new != reach[x]:
                reach[x] = new
                changed = True
    # ~ classes = mutually reachable sets
    class_of = {}
    classes = []
    for x in objs:
        if x in class_of:
            continue
        cls = frozenset(y for y in reach[x] if x in reach[y])
        idx = len(classes)
        classes.append(cls)
        for y in cls:
            class_of[y] = idx
    # longest strict chain between classes (memoized DAG recursion)
    n = len(classes)
    rep = [next(iter(cls)) for cls in classes]
    strict_cls = [[a != b and rep[b] in reach[rep[a]] and rep[a] not in reach[rep[b]]
                   for b in range(n)] for a in range(n)]
    memo: dict[tuple[int, int], int] = {}

    def longest(a: int, b: int) -> int:
        if a == b:
            return 0
        key = (a, b)
        if key not in memo:
            best = 1
            for mid in range(n):
                if strict_cls[a][mid] and (mid == b or strict_cls[mid][b]):
                    cand = 1 + longest(mid, b)
                    if cand > best:
                        best = cand
            memo[key] = best
        return memo[key]

    table = {}
    for x in objs:
        for y in reach[x]:
            a, b = class_of[x], class_of[y]
            table[(x, y)] = 0 if a == b else longest(a, b)
    exact = not isinstance(scope, Window) or scope.meta.interval_certified
    return PreorderAnalysis(
        objects=objs,
        reach={x: frozenset(s) for x, s in reach.items()},
        sim_classes=tuple(classes),
        class_of=class_of,
        distance_table=table,
        distances_exact=exact,
    )


def classify_morphism(c: LinCat, analysis: PreorderAnalysis, x, y, coords: Sequence) -> str:
    d = c.hom_dim(x, y)
    if x not in c.objects or y not in c.objects:
        raise UnknownHomSpace((x, y))
    if len(coords) != d:
        raise UnknownHomSpace(f"coordinate length {len(coords)} for hom dim {d}")
    if not any(coords):
        return ZERO
    return SHORT if analysis.sim(x, y) else LONG


def check_interval_finiteness(scope: LinCat | Window) -> Verdict:
    if not isinstance(scope, Window):
        return Verdict.certified(note="finite object set")
    if scope.meta.interval_certified:
        return Verdict.certified(note="generator declares interval-closed windows")
    return Verdict.inconclusive(note="generator declares no interval bound")


def check_upper_lower_finite(scope: LinCat | Window) -> tuple[Verdict, Verdict]:
    if not isinstance(scope, Window):
        v = Verdict.certified(note="finite object set")
        return (v, v)
    upper: Verdict | None = None
    lower: Verdict | None = None
    for label in range(scope.lo, scope.hi + 1):
        kind, payload = scope.meta.upset(label)
        if kind == "infinite" and upper is None:
            upper = Verdict.refuted(witness=label, note=payload)
        kind, payload = scope.meta.downset(label)
        if kind == "infinite" and lower is None:
            lower = Verdict.refuted(witness=label, note=payload)
    if upper is None:
        upper = Verdict.certified(note="declared up-sets all finite")
    if lower is None:
        lower = Verdict.certified(note="declared down-sets all finite")
    return (upper, lower)


def longest_strict_chain(analysis: PreorderAnalysis) -> int:
    """Maximum number of strict steps along any chain in scope."""
    return max(analysis.distance_table.values(), default=0)


def short_subcategory(c: LinCat, analysis: PreorderAnalysis) -> LinCat:
    """The subcategory keeping exactly the hom spaces between ~-equivalent objects."""
    keep = {(x, y) for (x, y) in c.hom if analysis.sim(x, y)}
    return LinCat(
        field=c.field,
        objects=c.objects,
        hom={k: v for k, v in c.hom.items() if k in keep},
        compose={(x, y, z): t for (x, y, z), t in c.compose.items()
                 if analysis.sim(x, y) and analysis.sim(y, z)},
        identity=dict(c.identity),
    )
