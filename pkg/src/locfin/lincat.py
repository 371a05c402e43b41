"""Presentations of k-linear categories and modules over them.

A category presentation fixes ordered bases of every hom space; composition is
given by structure-constant tensors.  Infinite families are only ever handled
through `Window`: a finite full subcategory plus declared metadata about the
rest of the family, so that analyses can distinguish "true in this window"
from "true of the whole category".

Conventions (used consistently across the package):
  * compose[(x, y, z)] is the tensor t for Hom(y,z) ⊗ Hom(x,y) → Hom(x,z),
    entry t[i,j,l] meaning e_i ∘ e_j = Σ_l t[i,j,l] e_l.
  * a left module stores, per pair (x, y), one dims[y] × dims[x] matrix for
    each basis vector of Hom(x,y); a right module one dims[y... dims[x]-column
    matrix dims[x] × dims[y] per basis vector (action of Hom(x,y) on N(y)).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Optional

from locfin.linalg import DimensionMismatch, Matrix, Subspace, Tensor3, solve
from locfin.scalar import FieldDescriptor
from locfin.verdict import Verdict

__all__ = [
    "LinCat",
    "Window",
    "GeneratorMeta",
    "LeftModule",
    "RightModule",
    "ModuleMeta",
    "MalformedPresentation",
    "UnknownObject",
    "NotSubmodule",
    "obj_id",
    "obj_int",
    "validate_category",
    "validate_module",
    "full_subcategory",
    "module_hom_space",
    "opposite",
    "opposite_module",
    "relabel",
    "representable_left_module",
    "zero_left_module",
    "direct_sum",
    "submodule",
    "quotient_module",
    "scope_cat",
]


class MalformedPresentation(ValueError):
    """Structurally inconsistent category/module data."""


class UnknownObject(KeyError):
    """Referenced object is not part of the category."""


class NotSubmodule(ValueError):
    """Subspace family is not closed under the action."""


def obj_id(n: int) -> str:
    """Canonical object id for integer-labelled gallery objects."""
    return f"{n:+04d}"


def obj_int(x: str) -> int:
    return int(x)


# ---------------------------------------------------------------------------
# categories


@dataclass
class LinCat:
    field: FieldDescriptor
    objects: tuple
    hom: dict  # (x, y) -> positive dimension; absent pairs are 0
    compose: dict  # (x, y, z) -> Tensor3 for Hom(y,z)⊗Hom(x,y)→Hom(x,z)
    identity: dict  # x -> coordinate tuple in Hom(x,x)

    def __post_init__(self) -> None:
        self.objects = tuple(self.objects)
        self.hom = {k: v for k, v in self.hom.items() if v}
        self.compose = {k: t for k, t in self.compose.items() if not t.is_zero()}
        self.identity = {x: tuple(v) for x, v in self.identity.items()}

    def hom_dim(self, x, y) -> int:
        return self.hom.get((x, y), 0)

    def compose_tensor(self, x, y, z) -> Tensor3:
        t = self.compose.get((x, y, z))
        if t is not None:
            return t
        dims = (self.hom_dim(y, z), self.hom_dim(x, y), self.hom_dim(x, z))
        return Tensor3(self.field, dims, ())

    def compose_vec(self, x, y, z, i: int, j: int) -> list:
        """Coordinates of e_i ∘ e_j in Hom(x,z), for e_i ∈ Hom(y,z), e_j ∈ Hom(x,y)."""
        return self.compose_tensor(x, y, z).slice_ij(i, j)

    def check_object(self, x) -> None:
        if x not in self.objects:
            raise UnknownObject(x)


@dataclass
class GeneratorMeta:
    """Declared facts about the infinite family a window was cut from.

    All declarations are about the *full* category; the window machinery never
    infers such facts from finite data.  `upset`/`downset` return either
    ("finite", frozenset of integer labels) or ("infinite", reason).
    """

    interval_certified: bool
    upset: Callable[[int], tuple]
    downset: Callable[[int], tuple]
    declared_frontier: Optional[Callable[[int], Optional[frozenset]]] = None
    note: str = ""


@dataclass
class Window:
    """A finite truncation [lo..hi] of an integer-labelled category family."""

    cat: LinCat
    name: str
    lo: int
    hi: int
    meta: GeneratorMeta
    grow: Callable[["Window", int], "Window"] = field(default=None, compare=False)
    closure_note: str = ""
    open_ends: tuple = ("lo", "hi")  # window ends where the family continues

    @property
    def objects(self):
        return self.cat.objects

    def spec_string(self) -> str:
        return f"{self.lo}..{self.hi}"

    def describe(self) -> str:
        return f"{self.name}[{self.spec_string()}]"


def scope_cat(scope) -> LinCat:
    """The concrete finite category of a scope (a LinCat or a Window)."""
    return scope.cat if isinstance(scope, Window) else scope


def _structural_check(c: LinCat) -> None:
    if len(set(c.objects)) != len(c.objects):
        raise MalformedPresentation("duplicate object ids")
    for (x, y), d in c.hom.items():
        if x not in c.objects or y not in c.objects:
            raise UnknownObject((x, y))
        if not isinstance(d, int) or d < 0:
            raise MalformedPresentation(f"bad hom dimension for {(x, y)}: {d}")
    for x in c.objects:
        coords = c.identity.get(x)
        if coords is None:
            raise MalformedPresentation(f"missing identity for {x}")
        if len(coords) != c.hom_dim(x, x):
            raise MalformedPresentation(f"identity length mismatch at {x}")
    for (x, y, z), t in c.compose.items():
        for o in (x, y, z):
            if o not in c.objects:
                raise UnknownObject(o)
        expect = (c.hom_dim(y, z), c.hom_dim(x, y), c.hom_dim(x, z))
        if t.dims != expect:
            raise MalformedPresentation(f"compose tensor dims {t.dims} at {(x, y, z)}, expected {expect}")
        if t.field != c.field:
            raise MalformedPresentation(f"compose tensor field mismatch at {(x, y, z)}")


def validate_category(c: LinCat) -> Verdict:
    """Check the category axioms: nonzero identities, unitality, associativity."""
    _structural_check(c)
    f = c.field
    for x in c.objects:
        if not any(c.identity[x]):
            return Verdict.refuted(witness=x, note="identity element is zero")
    # unitality
    for (x, y), d in sorted(c.hom.items()):
        idy = c.identity[y]
        idx = c.identity[x]
        left = c.compose_tensor(x, y, y)  # Hom(y,y)⊗Hom(x,y)→Hom(x,y)
        right = c.compose_tensor(x, x, y)  # Hom(x,y)⊗Hom(x,x)→Hom(x,y)
        for j in range(d):
            acc = [f.zero()] * d
            for i, coef in enumerate(idy):
                if coef:
                    vec = left.slice_ij(i, j)
                    acc = [f.add(a, f.mul(coef, v)) for a, v in zip(acc, vec)]
            if acc != [f.one() if l == j else f.zero() for l in range(d)]:
                return Verdict.refuted(witness=("left-unit", x, y, j), note="id ∘ f ≠ f")
            acc = [f.zero()] * d
            for jj, coef in enumerate(idx):
                if coef:
                    vec = right.slice_ij(j, jj)
                    acc = [f.add(a, f.mul(coef, v)) for a, v in zip(acc, vec)]
            if acc != [f.one() if l == j else f.zero() for l in range(d)]:
                return Verdict.refuted(witness=("right-unit", x, y, j), note="f ∘ id ≠ f")
    # associativity on all basis triples
    objs = c.objects
    for w in objs:
        for x in objs:
            dwx = c.hom_dim(w, x)
            if not dwx:
                continue
            for y in objs:
                dxy = c.hom_dim(x, y)
                if not dxy:
                    continue
                for z in objs:
                    dyz = c.hom_dim(y, z)
                    if not dyz:
                        continue
                    dwz = c.hom_dim(w, z)
                    t_xyz = c.compose_tensor(x, y, z)
                    t_wxz = c.compose_tensor(w, x, z)
                    t_wxy = c.compose_tensor(w, x, y)
                    t_wyz = c.compose_tensor(w, y, z)
                    for i in range(dyz):
                        for j in range(dxy):
                            hg = t_xyz.slice_ij(i, j)  # h∘g in Hom(x,z)
                            for kk in range(dwx):
                                lhs = [f.zero()] * dwz
                                for l, coef in enumerate(hg):
                                    if coef:
                                        vec = t_wxz.slice_ij(l, kk)
                                        lhs = [f.add(a, f.mul(coef, v)) for a, v in zip(lhs, vec)]
                                gf = t_wxy.slice_ij(j, kk)  # g∘f in Hom(w,y)
                                rhs = [f.zero()] * dwz
                                for l, coef in enumerate(gf):
                                    if coef:
                                        vec = t_wyz.slice_ij(i, l)
                                        rhs = [f.add(a, f.mul(coef, v)) for a, v in zip(rhs, vec)]
                                if lhs != rhs:
                                    return Verdict.refuted(
                                        witness=("associativity", (w, x, y, z), (i, j, kk)),
                                        note="(h∘g)∘f ≠ h∘(g∘f)")
    return Verdict.certified(note="category axioms hold on all basis triples")


def full_subcategory(c: LinCat, objs: Iterable) -> LinCat:
    objs = tuple(o for o in c.objects if o in set(objs))
    missing = set(objs) - set(c.objects)
    if missing:
        raise UnknownObject(sorted(missing))
    keep = set(objs)
    return LinCat(
        field=c.field,
        objects=objs,
        hom={k: v for k, v in c.hom.items() if k[0] in keep and k[1] in keep},
        compose={k: t for k, t in c.compose.items() if set(k) <= keep},
        identity={x: c.identity[x] for x in objs},
    )


def opposite(c: LinCat) -> LinCat:
    """The opposite category: hom'(x,y) = hom(y,x), composition reversed."""
    hom = {(y, x): d for (x, y), d in c.hom.items()}
    compose = {}
    for (x, y, z), t in c.compose.items():
        # t: Hom(y,z)⊗Hom(x,y)→Hom(x,z); in the opposite it computes
        # Hom'(z,y)⊗... the op-composite over key (z, y, x).
        coeffs = {(j, i, l): v for i, j, l, v in t.entries}
        dims = (t.dims[1], t.dims[0], t.dims[2])
        compose[(z, y, x)] = Tensor3.from_dict(c.field, dims, coeffs)
    return LinCat(c.field, c.objects, hom, compose, dict(c.identity))


def relabel(c: LinCat, mapping: dict) -> LinCat:
    m = lambda o: mapping[o]
    return LinCat(
        field=c.field,
        objects=tuple(m(o) for o in c.objects),
        hom={(m(x), m(y)): d for (x, y), d in c.hom.items()},
        compose={(m(x), m(y), m(z)): t for (x, y, z), t in c.compose.items()},
        identity={m(x): v for x, v in c.identity.items()},
    )


# ---------------------------------------------------------------------------
# modules


def _fact_finite(labels) -> tuple:
    return ("finite", frozenset(labels))


def _fact_infinite(reason: str) -> tuple:
    return ("infinite", reason)


@dataclass
class ModuleMeta:
    """Declared facts about a module over the full (infinite) category family.

    `comodule_supports(x)` declares the set of y with nonzero Hom(x,y)-action
    (the per-source support); `contramodule_supports(y)` the set of x with
    nonzero action into y (the per-target support).  `tail_image(y)` is the
    stable sum of images of actions from outside every finite object set, as a
    Subspace of the y-component — zero for finitely supported modules.
    """

    note: str = ""
    comodule_supports: Optional[Callable[[int], tuple]] = None
    contramodule_supports: Optional[Callable[[int], tuple]] = None
    tail_image: Optional[Callable[[str], Subspace]] = None
    uniform_supports: bool = True

    finite = staticmethod(_fact_finite)
    infinite = staticmethod(_fact_infinite)


@dataclass
class _ModuleBase:
    cat: LinCat
    dims: dict  # object -> nonnegative dimension
    action: dict  # (x, y) -> tuple of matrices, one per basis vector of Hom(x,y)
    meta: Optional[ModuleMeta] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        clean = {}
        for key, mats in self.action.items():
            mats = tuple(mats)
            if any(not m.is_zero() for m in mats):
                clean[key] = mats
        self.action = clean
        self.dims = {x: self.dims.get(x, 0) for x in self.cat.objects}

    def dim(self, x) -> int:
        return self.dims.get(x, 0)

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total_dim() == 0

    def block_shape(self, x, y) -> tuple[int, int]:
        raise NotImplementedError

    def blocks(self, x, y) -> tuple:
        """Action matrices for (x, y); fabricated zeros when not stored."""
        stored = self.action.get((x, y))
        if stored is not None:
            return stored
        r, c = self.block_shape(x, y)
        z = Matrix.zeros(self.cat.field, r, c)
        return tuple(z for _ in range(self.cat.hom_dim(x, y)))

    def support_pairs(self):
        return sorted(self.action.keys())


@dataclass
class LeftModule(_ModuleBase):
    """Covariant functor to vector spaces: blocks map M(x) → M(y) per f ∈ Hom(x,y)."""

    side = "left"

    def block_shape(self, x, y):
        return (self.dim(y), self.dim(x))


@dataclass
class RightModule(_ModuleBase):
    """Contravariant functor: blocks map N(y) → N(x) per f ∈ Hom(x,y)."""

    side = "right"

    def block_shape(self, x, y):
        return (self.dim(x), self.dim(y))


def validate_module(m: LeftModule | RightModule) -> Verdict:
    c = m.cat
    f = c.field
    for (x, y), mats in m.action.items():
        if x not in c.objects or y not in c.objects:
            raise UnknownObject((x, y))
        if len(mats) != c.hom_dim(x, y):
            raise DimensionMismatch(f"{len(mats)} blocks at {(x, y)}, hom dim {c.hom_dim(x, y)}")
        for mat in mats:
            if (mat.rows, mat.cols) != m.block_shape(x, y):
                raise DimensionMismatch(f"block shape {(mat.rows, mat.cols)} at {(x, y)}")
            if mat.field != f:
                raise DimensionMismatch(f"block field mismatch at {(x, y)}")
    left = m.side == "left"
    # unitality
    for x in c.objects:
        if not m.dim(x):
            continue
        mats = m.blocks(x, x)
        ident = Matrix.identity(f, m.dim(x))
        acc = Matrix.zeros(f, m.dim(x), m.dim(x))
        for coef, mat in zip(c.identity[x], mats):
            if coef:
                acc = acc + mat.scale(coef)
        if acc != ident:
            return Verdict.refuted(witness=("unitality", x), note="identity does not act as the identity")
    # associativity on all composable basis pairs
    for x in c.objects:
        for y in c.objects:
            dxy = c.hom_dim(x, y)
            if not dxy:
                continue
            for z in c.objects:
                dyz = c.hom_dim(y, z)
                if not dyz:
                    continue
                t = c.compose_tensor(x, y, z)
                b_xy = m.blocks(x, y)
                b_yz = m.blocks(y, z)
                b_xz = m.blocks(x, z)
                for i in range(dyz):
                    for j in range(dxy):
                        if left:
                            lhs = b_yz[i] @ b_xy[j]
                        else:
                            lhs = b_xy[j] @ b_yz[i]
                        coeffs = t.slice_ij(i, j)
                        rhs = Matrix.zeros(f, lhs.rows, lhs.cols)
                        for l, coef in enumerate(coeffs):
                            if coef:
                                rhs = rhs + b_xz[l].scale(coef)
                        if lhs != rhs:
                            return Verdict.refuted(
                                witness=("associativity", (x, y, z), (i, j)),
                                note="action of composite differs from composite of actions")
    return Verdict.certified(note="module axioms hold on all basis pairs")


def zero_left_module(c: LinCat) -> LeftModule:
    return LeftModule(c, {x: 0 for x in c.objects}, {})


def representable_left_module(c: LinCat, y) -> LeftModule:
    """The covariant functor Hom(y, −) with action by postcomposition."""
    c.check_object(y)
    dims = {x: c.hom_dim(y, x) for x in c.objects}
    action = {}
    for x in c.objects:
        for x2 in c.objects:
            d = c.hom_dim(x, x2)
            if not d or not dims[x] or not dims[x2]:
                continue
            t = c.compose_tensor(y, x, x2)
            mats = []
            for i in range(d):
                grid = [[t.get(i, j, l) for j in range(dims[x])] for l in range(dims[x2])]
                mats.append(Matrix.from_rows(c.field, grid, dims[x]))
            action[(x, x2)] = tuple(mats)
    return LeftModule(c, dims, action)


def direct_sum(m1: _ModuleBase, m2: _ModuleBase):
    if m1.cat is not m2.cat and m1.cat != m2.cat:
        raise MalformedPresentation("direct sum over different categories")
    if type(m1) is not type(m2):
        raise MalformedPresentation("direct sum of mixed variance")
    c = m1.cat
    f = c.field
    dims = {x: m1.dim(x) + m2.dim(x) for x in c.objects}
    action = {}
    for (x, y) in sorted(set(m1.action) | set(m2.action)):
        b1 = m1.blocks(x, y)
        b2 = m2.blocks(x, y)
        mats = []
        for a, b in zip(b1, b2):
            rows = []
            for i in range(a.rows):
                rows.append(list(a.data[i]) + [f.zero()] * b.cols)
            for i in range(b.rows):
                rows.append([f.zero()] * a.cols + list(b.data[i]))
            mats.append(Matrix.from_rows(f, rows, a.cols + b.cols))
        action[(x, y)] = tuple(mats)
    return type(m1)(c, dims, action)


def module_hom_space(m1: _ModuleBase, m2: _ModuleBase) -> Subspace:
    """Families φ(x): m1(x) → m2(x) commuting with every action basis element.

    Returned as the kernel of the commutation system in the flattened
    coordinates (objects in category order, entries row-major).
    """
    if m1.cat != m2.cat or type(m1) is not type(m2):
        raise MalformedPresentation("hom between modules over different categories")
    pairs = []
    for (x, y) in sorted(set(m1.action) | set(m2.action) | set(m1.cat.hom)):
        for a1, a2 in zip(m1.blocks(x, y), m2.blocks(x, y)):
            if m1.side == "left":
                pairs.append((x, y, a1, a2))
            else:
                pairs.append((y, x, a1, a2))
    return commuting_family_space(m1.cat.field, m1.cat.objects, m1.dims, m2.dims, pairs)


def commuting_family_space(f: FieldDescriptor, objects, dims1: dict, dims2: dict, constraints) -> Subspace:
    """Solution space of φ(tgt) · A1 = A2 · φ(src) over families of matrices.

    `constraints` yields (src_obj, tgt_obj, A1: dims1[src]→dims1[tgt],
    A2: dims2[src]→dims2[tgt]).
    """
    offsets = {}
    total = 0
    for x in objects:
        offsets[x] = total
        total += dims2.get(x, 0) * dims1.get(x, 0)
    rows = []
    for src, tgt, a1, a2 in constraints:
        d1s, d1t = dims1.get(src, 0), dims1.get(tgt, 0)
        d2s, d2t = dims2.get(src, 0), dims2.get(tgt, 0)
        # equation grid: (d2t x d1s) entries
        for r in range(d2t):
            for s in range(d1s):
                row = [f.zero()] * total
                # + [φ(tgt) A1]_{r,s} = Σ_k φ(tgt)[r,k] A1[k,s]
                for k in range(d1t):
                    v = a1[k, s]
                    if v:
                        row[offsets[tgt] + r * d1t + k] = f.add(row[offsets[tgt] + r * d1t + k], v)
                # - [A2 φ(src)]_{r,s} = Σ_k A2[r,k] φ(src)[k,s]
                for k in range(d2s):
                    v = a2[r, k]
                    if v:
                        idx = offsets[src] + k * d1s + s
                        row[idx] = f.sub(row[idx], v)
                if any(row):
                    rows.append(row)
    from locfin.linalg import Matrix as _M, kernel as _kernel

    if not rows:
        return Subspace.full(f, total)
    return _kernel(_M.from_rows(f, rows, total))


def submodule(m: _ModuleBase, subspaces: dict):
    """Restrict m to an action-closed family of subspaces.

    Returns (sub, inclusions) where inclusions[x] is the dims[x] × subdim[x]
    matrix embedding the chosen basis.  Raises NotSubmodule when the family is
    not closed.
    """
    c = m.cat
    f = c.field
    incl = {}
    sdims = {}
    for x in c.objects:
        s = subspaces.get(x, Subspace.zero(f, m.dim(x)))
        if s.ambient != m.dim(x):
            raise DimensionMismatch(f"subspace ambient at {x}")
        incl[x] = s.basis_matrix().transpose()
        sdims[x] = s.dim
    action = {}
    for (x, y), mats in m.action.items():
        src, tgt = (x, y) if m.side == "left" else (y, x)
        s_tgt = subspaces.get(tgt, Subspace.zero(f, m.dim(tgt)))
        new = []
        for mat in mats:
            mapped = mat @ incl[src]
            for col in zip(*mapped.data) if mapped.data else []:
                if not s_tgt.contains_vector(list(col)):
                    raise NotSubmodule((x, y))
            try:
                new.append(solve(incl[tgt], mapped))
            except Exception as exc:  # inconsistent ⇒ not closed
                raise NotSubmodule((x, y)) from exc
        action[(x, y)] = tuple(new)
    return type(m)(c, sdims, action), incl


def quotient_module(m: _ModuleBase, subspaces: dict):
    """Quotient of m by an action-closed family of subspaces.

    Returns (quot, projections) where projections[x] maps old coordinates to
    quotient coordinates (indexed by the non-pivot coordinates of the
    subspace's echelon basis).
    """
    c = m.cat
    f = c.field
    proj = {}
    sect = {}
    qdims = {}
    for x in c.objects:
        s = subspaces.get(x, Subspace.zero(f, m.dim(x)))
        if s.ambient != m.dim(x):
            raise DimensionMismatch(f"subspace ambient at {x}")
        n = m.dim(x)
        pivots = []
        for row in s.basis:
            pivots.append(next(i for i, v in enumerate(row) if v))
        free = [i for i in range(n) if i not in pivots]
        qdims[x] = len(free)
        # projection: reduce against the echelon basis, read off free coords
        prows = []
        for fi in free:
            coords = []
            for j in range(n):
                if j == fi:
                    coords.append(f.one())
                elif j in pivots:
                    r = pivots.index(j)
                    coords.append(f.neg(s.basis[r][fi]))
                else:
                    coords.append(f.zero())
            prows.append(coords)
        proj[x] = Matrix.from_rows(f, prows, n) if free else Matrix.zeros(f, 0, n)
        srows = [[f.one() if free[j] == i else f.zero() for j in range(len(free))] for i in range(n)]
        sect[x] = Matrix.from_rows(f, srows, len(free)) if n else Matrix.zeros(f, 0, len(free))
    action = {}
    for (x, y), mats in m.action.items():
        src, tgt = (x, y) if m.side == "left" else (y, x)
        s_src = subspaces.get(src, Subspace.zero(f, m.dim(src)))
        s_tgt = subspaces.get(tgt, Subspace.zero(f, m.dim(tgt)))
        new = []
        for mat in mats:
            # closure check: action must map the subspace into the subspace
            for row in s_src.basis:
                if not s_tgt.contains_vector(mat.apply(list(row))):
                    raise NotSubmodule((x, y))
            new.append(proj[tgt] @ mat @ sect[src])
        action[(x, y)] = tuple(new)
    return type(m)(c, qdims, action), proj


def enumerate_modules(c: LinCat, max_dim: int, side: str = "left"):
    """Yield every valid module over a small prime-field category with all
    component dimensions ≤ max_dim (desk-scale exhaustive enumeration).

    Identity actions are fixed to the identity matrix; all other blocks range
    over every matrix, filtered through validate_module.  Intended for
    categories where hom spaces are at most one-dimensional.
    """
    from itertools import product

    f = c.field
    if f.p is None:
        raise MalformedPresentation("exhaustive enumeration needs a finite field")
    els = list(f.elements())
    cls = LeftModule if side == "left" else RightModule
    objs = c.objects
    nonid = [(x, y) for (x, y) in sorted(c.hom) if x != y]
    for dims_tuple in product(range(max_dim + 1), repeat=len(objs)):
        dims = dict(zip(objs, dims_tuple))
        probe = cls(c, dims, {})
        shapes = [probe.block_shape(x, y) for (x, y) in nonid]
        cell_counts = [r * cc * c.hom_dim(x, y)
                       for (x, y), (r, cc) in zip(nonid, shapes)]
        for flat in product(els, repeat=sum(cell_counts)):
            action = {}
            for x in objs:
                if dims[x]:
                    action[(x, x)] = (Matrix.identity(f, dims[x]),)
            idx = 0
            for (pair, (r, cc), count) in zip(nonid, shapes, cell_counts):
                if not count:
                    continue
                per = r * cc
                mats = []
                for _ in range(c.hom_dim(*pair)):
                    cells = flat[idx:idx + per]
                    idx += per
                    grid = [list(cells[i * cc:(i + 1) * cc]) for i in range(r)]
                    mats.append(Matrix.from_rows(f, grid, cc) if r
                                else Matrix.zeros(f, 0, cc))
                if any(not m.is_zero() for m in mats):
                    action[pair] = tuple(mats)
            m = cls(c, dims, action)
            if validate_module(m).is_certified:
                yield m


def opposite_module(m: _ModuleBase):
    """Reinterpret a left module over C as a right module over opposite(C), or back."""
    cop = opposite(m.cat)
    action = {(y, x): mats for (x, y), mats in m.action.items()}
    other = RightModule if isinstance(m, LeftModule) else LeftModule
    return other(cop, dict(m.dims), action)
