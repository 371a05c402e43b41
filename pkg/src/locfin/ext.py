"""Short exact sequences of modules via cocycles, and closure-property tests.

An extension of Q by P is presented by blocks c_f: Q(x) → P(y), one per hom
basis vector, satisfying the triangular multiplicativity c_{g∘f} = p_g·c_f +
c_g·q_f.  The condition is linear, so the space of valid cocycles is computed
exactly and random extensions are drawn from it with a seeded generator.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from locfin.lincat import (
    LeftModule,
    LinCat,
    RightModule,
    Window,
    module_hom_space,
    scope_cat,
    validate_module,
)
from locfin.linalg import Matrix, Subspace, kernel
from locfin.lift import (
    LIFTABLE,
    HypothesisNotCertified,
    is_cofinite,
    is_contrafinite,
    lift_to_comodule,
)
from locfin.frontier import check_left_strict
from locfin.verdict import Verdict

__all__ = [
    "Cocycle",
    "ShortExactSeq",
    "CocycleViolated",
    "HypothesisNotSatisfied",
    "validate_cocycle",
    "cocycle_space",
    "random_cocycle",
    "build_extension",
    "closure_test",
    "sub_quot_sum_closure_test",
    "locally_finite_filtration",
    "CONTRAFINITE_LEFT",
    "COFINITE_RIGHT",
    "COMODULE_IMAGE_RIGHT",
]

CONTRAFINITE_LEFT = "contrafinite_left"
COFINITE_RIGHT = "cofinite_right"
COMODULE_IMAGE_RIGHT = "comodule_image_right"


class CocycleViolated(ValueError):
    """The blocks do not satisfy the cocycle condition."""


class HypothesisNotSatisfied(ValueError):
    """sub/quot do not satisfy the predicate under test."""


@dataclass
class Cocycle:
    sub: LeftModule | RightModule  # P
    quot: LeftModule | RightModule  # Q
    blocks: dict  # (x, y) -> tuple of matrices; left: Q(x) → P(y), right: Q(y) → P(x)

    def __post_init__(self) -> None:
        clean = {}
        for key, mats in self.blocks.items():
            mats = tuple(mats)
            if any(not m.is_zero() for m in mats):
                clean[key] = mats
        self.blocks = clean

    @property
    def cat(self) -> LinCat:
        return self.sub.cat

    def block(self, x, y) -> tuple:
        stored = self.blocks.get((x, y))
        if stored is not None:
            return stored
        f = self.cat.field
        if self.sub.side == "left":
            z = Matrix.zeros(f, self.sub.dim(y), self.quot.dim(x))
        else:
            z = Matrix.zeros(f, self.sub.dim(x), self.quot.dim(y))
        return tuple(z for _ in range(self.cat.hom_dim(x, y)))


def validate_cocycle(c: Cocycle) -> Verdict:
    cat = c.cat
    f = cat.field
    left = c.sub.side == "left"
    for x in cat.objects:
        d = cat.hom_dim(x, x)
        if not d:
            continue
        mats = c.block(x, x)
        acc = None
        for coef, mat in zip(cat.identity[x], mats):
            term = mat.scale(coef)
            acc = term if acc is None else acc + term
        if acc is not None and not acc.is_zero():
            return Verdict.refuted(witness=("identity", x), note="identity block does not vanish")
    for x in cat.objects:
        for y in cat.objects:
            dxy = cat.hom_dim(x, y)
            if not dxy:
                continue
            for z in cat.objects:
                dyz = cat.hom_dim(y, z)
                if not dyz:
                    continue
                t = cat.compose_tensor(x, y, z)
                c_xy, c_yz, c_xz = c.block(x, y), c.block(y, z), c.block(x, z)
                p_yz = c.sub.blocks(y, z)
                q_xy = c.quot.blocks(x, y)
                p_xy = c.sub.blocks(x, y)
                q_yz = c.quot.blocks(y, z)
                for i in range(dyz):
                    for j in range(dxy):
                        if left:
                            rhs = p_yz[i] @ c_xy[j] + c_yz[i] @ q_xy[j]
                        else:
                            rhs = p_xy[j] @ c_yz[i] + c_xy[j] @ q_yz[i]
                        lhs = Matrix.zeros(f, rhs.rows, rhs.cols)
                        for l, coef in enumerate(t.slice_ij(i, j)):
                            if coef:
                                lhs = lhs + c_xz[l].scale(coef)
                        if lhs != rhs:
                            return Verdict.refuted(witness=((x, y, z), (i, j)),
                                                   note="cocycle condition fails")
    return Verdict.certified(note="cocycle condition holds on all composable pairs")


def _cocycle_slots(P, Q):
    """Flattened unknown layout: list of ((x, y), f_index, rows, cols)."""
    cat = P.cat
    left = P.side == "left"
    slots = []
    for x in cat.objects:
        for y in cat.objects:
            d = cat.hom_dim(x, y)
            if not d:
                continue
            rows = P.dim(y) if left else P.dim(x)
            cols = Q.dim(x) if left else Q.dim(y)
            if not rows or not cols:
                continue
            for fi in range(d):
                slots.append(((x, y), fi, rows, cols))
    return slots


def cocycle_space(P, Q) -> list[Cocycle]:
    """A basis of the space of valid cocycles for extensions of Q by P."""
    cat = P.cat
    f = cat.field
    left = P.side == "left"
    slots = _cocycle_slots(P, Q)
    offsets = {}
    total = 0
    for key, fi, rows, cols in slots:
        offsets[(key, fi)] = total
        total += rows * cols
    shapes = {(key, fi): (rows, cols) for key, fi, rows, cols in slots}

    def entry_index(key, fi, r, s):
        rows, cols = shapes[(key, fi)]
        return offsets[(key, fi)] + r * cols + s

    eq_rows = []

    def add_eq(row):
        if any(row):
            eq_rows.append(row)

    # identity blocks vanish
    for x in cat.objects:
        key = (x, x)
        if not cat.hom_dim(x, x) or (key, 0) not in shapes:
            continue
        rows, cols = shapes[(key, 0)]
        for r in range(rows):
            for s in range(cols):
                row = [f.zero()] * total
                for fi, coef in enumerate(cat.identity[x]):
                    if coef:
                        row[entry_index(key, fi, r, s)] = coef
                add_eq(row)
    # multiplicativity
    for x in cat.objects:
        for y in cat.objects:
            dxy = cat.hom_dim(x, y)
            if not dxy:
                continue
            for z in cat.objects:
                dyz = cat.hom_dim(y, z)
                if not dyz:
                    continue
                t = cat.compose_tensor(x, y, z)
                p_yz = P.blocks(y, z)
                q_xy = Q.blocks(x, y)
                p_xy = P.blocks(x, y)
                q_yz = Q.blocks(y, z)
                if left:
                    rows, cols = P.dim(z), Q.dim(x)
                else:
                    rows, cols = P.dim(x), Q.dim(z)
                if not rows or not cols:
                    continue
                for i in range(dyz):
                    for j in range(dxy):
                        coeffs = t.slice_ij(i, j)
                        for r in range(rows):
                            for s in range(cols):
                                row = [f.zero()] * total
                                # Σ_l t[i,j,l] c_xz[l][r,s]
                                for l, coef in enumerate(coeffs):
                                    if coef and ((x, z), l) in shapes:
                                        idx = entry_index((x, z), l, r, s)
                                        row[idx] = f.add(row[idx], coef)
                                if left:
                                    # -(p_yz[i] @ c_xy[j])[r,s] = -Σ_k p[r,k] c_xy[j][k,s]
                                    if ((x, y), j) in shapes:
                                        for k in range(P.dim(y)):
                                            v = p_yz[i][r, k]
                                            if v:
                                                idx = entry_index((x, y), j, k, s)
                                                row[idx] = f.sub(row[idx], v)
                                    # -(c_yz[i] @ q_xy[j])[r,s] = -Σ_k c_yz[i][r,k] q[k,s]
                                    if ((y, z), i) in shapes:
                                        for k in range(Q.dim(y)):
                                            v = q_xy[j][k, s]
                                            if v:
                                                idx = entry_index((y, z), i, r, k)
                                                row[idx] = f.sub(row[idx], v)
                                else:
                                    # right: rhs = p_xy[j] @ c_yz[i] + c_xy[j] @ q_yz[i]
                                    if ((y, z), i) in shapes:
                                        for k in range(P.dim(y)):
                                            v = p_xy[j][r, k]
                                            if v:
                                                idx = entry_index((y, z), i, k, s)
                                                row[idx] = f.sub(row[idx], v)
                                    if ((x, y), j) in shapes:
                                        for k in range(Q.dim(y)):
                                            v = q_yz[i][k, s]
                                            if v:
                                                idx = entry_index((x, y), j, r, k)
                                                row[idx] = f.sub(row[idx], v)
                                add_eq(row)
    if total == 0:
        return []
    if eq_rows:
        sol = kernel(Matrix.from_rows(f, eq_rows, total))
    else:
        sol = Subspace.full(f, total)
    basis = []
    for vec in sol.basis:
        blocks: dict = {}
        for key, fi, rows, cols in slots:
            off = offsets[(key, fi)]
            grid = [[vec[off + r * cols + s] for s in range(cols)] for r in range(rows)]
            blocks.setdefault(key, [None] * cat.hom_dim(*key))[fi] = Matrix.from_rows(f, grid, cols)
        full_blocks = {}
        for key, mats in blocks.items():
            fixed = []
            for fi in range(cat.hom_dim(*key)):
                m = mats[fi]
                if m is None:
                    rows, cols = shapes.get((key, 0), (0, 0))
                    m = Matrix.zeros(f, rows, cols)
                fixed.append(m)
            full_blocks[key] = tuple(fixed)
        basis.append(Cocycle(P, Q, full_blocks))
    return basis


def random_cocycle(P, Q, rng: random.Random) -> Cocycle:
    """A random field combination of the cocycle-space basis."""
    basis = cocycle_space(P, Q)
    cat = P.cat
    f = cat.field
    blocks: dict = {}
    for b in basis:
        if f.p is not None:
            coef = f.from_int(rng.randrange(f.p))
        else:
            coef = f.from_int(rng.randrange(-3, 4))
        if not coef:
            continue
        for key, mats in b.blocks.items():
            cur = blocks.get(key)
            scaled = tuple(m.scale(coef) for m in mats)
            if cur is None:
                blocks[key] = scaled
            else:
                blocks[key] = tuple(a + bm for a, bm in zip(cur, scaled))
    return Cocycle(P, Q, blocks)


@dataclass
class ShortExactSeq:
    sub: LeftModule | RightModule
    mid: LeftModule | RightModule
    quot: LeftModule | RightModule
    inject: dict  # x -> Matrix sub(x) → mid(x)
    surject: dict  # x -> Matrix mid(x) → quot(x)


def build_extension(c: Cocycle) -> ShortExactSeq:
    v = validate_cocycle(c)
    if not v.is_certified:
        raise CocycleViolated(v.witness)
    P, Q = c.sub, c.quot
    cat = c.cat
    f = cat.field
    left = P.side == "left"
    dims = {x: P.dim(x) + Q.dim(x) for x in cat.objects}
    action = {}
    for (x, y) in sorted(set(P.action) | set(Q.action) | set(c.blocks)):
        pmats, qmats, cmats = P.blocks(x, y), Q.blocks(x, y), c.block(x, y)
        mats = []
        for pm, qm, cm in zip(pmats, qmats, cmats):
            # rows: P-part then Q-part of the target; cols likewise of the source
            src, tgt = (x, y) if left else (y, x)
            rows = []
            for r in range(P.dim(tgt)):
                rows.append(list(pm.data[r]) + list(cm.data[r]))
            for r in range(Q.dim(tgt)):
                rows.append([f.zero()] * P.dim(src) + list(qm.data[r]))
            mats.append(Matrix.from_rows(f, rows, dims[src]))
        action[(x, y)] = tuple(mats)
    cls = LeftModule if left else RightModule
    mid = cls(cat, dims, action)
    check = validate_module(mid)
    if not check.is_certified:
        raise CocycleViolated(check.witness)
    inject = {}
    surject = {}
    for x in cat.objects:
        dp, dq = P.dim(x), Q.dim(x)
        inj_rows = [[f.one() if r == s else f.zero() for s in range(dp)] for r in range(dp)]
        inj_rows += [[f.zero()] * dp for _ in range(dq)]
        inject[x] = Matrix.from_rows(f, inj_rows, dp) if dp + dq else Matrix.zeros(f, 0, 0)
        sur_rows = [[f.zero()] * dp + [f.one() if s == r else f.zero() for s in range(dq)]
                    for r in range(dq)]
        surject[x] = Matrix.from_rows(f, sur_rows, dp + dq) if dq else Matrix.zeros(f, 0, dp + dq)
    return ShortExactSeq(P, mid, Q, inject, surject)


def closure_test(kind: str, s: ShortExactSeq, scope: LinCat | Window | None = None,
                 left_strict: Verdict | None = None) -> Verdict:
    """Does the middle term inherit the named predicate from sub and quot?"""
    scope = scope if scope is not None else s.mid.cat
    if left_strict is None:
        left_strict = check_left_strict(scope)
    if kind == CONTRAFINITE_LEFT:
        if not left_strict.is_certified:
            raise HypothesisNotCertified("left strictness not certified on this scope")
        if not (is_contrafinite(s.sub, scope).is_certified and is_contrafinite(s.quot, scope).is_certified):
            raise HypothesisNotSatisfied("sub/quot are not contrafinite")
        return is_contrafinite(s.mid, scope)
    if kind == COFINITE_RIGHT:
        if not (is_cofinite(s.sub, scope).is_certified and is_cofinite(s.quot, scope).is_certified):
            raise HypothesisNotSatisfied("sub/quot are not cofinite")
        return is_cofinite(s.mid, scope)
    if kind == COMODULE_IMAGE_RIGHT:
        if not (lift_to_comodule(s.sub, scope).decision == LIFTABLE
                and lift_to_comodule(s.quot, scope).decision == LIFTABLE):
            raise HypothesisNotSatisfied("sub/quot are not comodule images")
        rep = lift_to_comodule(s.mid, scope)
        if rep.decision == LIFTABLE:
            return Verdict.certified(note="middle term lifts to a comodule")
        return Verdict.refuted(witness=rep.witness, note=rep.note)
    raise ValueError(f"unknown closure kind: {kind}")


def sub_quot_sum_closure_test(modules, scope: LinCat | Window | None = None,
                              rng: random.Random | None = None, trials: int = 20) -> Verdict:
    """Random submodules, quotients, and direct sums of liftable modules lift."""
    from locfin.lincat import direct_sum, submodule as _submodule, quotient_module

    rng = rng or random.Random(0)
    modules = list(modules)
    if not modules:
        return Verdict.certified(note="no inputs")
    scope = scope if scope is not None else modules[0].cat
    cat = modules[0].cat
    f = cat.field
    for m in modules:
        if lift_to_comodule(m, scope).decision != LIFTABLE:
            raise HypothesisNotSatisfied("input module is not liftable")
    for _ in range(trials):
        m1 = rng.choice(modules)
        m2 = rng.choice(modules)
        if lift_to_comodule(direct_sum(m1, m2), scope).decision != LIFTABLE:
            return Verdict.refuted(witness="direct_sum", note="sum failed to lift")
        hom = module_hom_space(m1, m2)
        if hom.dim:
            vec = hom.basis[rng.randrange(hom.dim)]
            fam_ker = {}
            fam_im = {}
            off = 0
            for x in cat.objects:
                r, c = m2.dim(x), m1.dim(x)
                grid = [[vec[off + i * c + j] for j in range(c)] for i in range(r)]
                phi = Matrix.from_rows(f, grid, c) if r else Matrix.zeros(f, 0, c)
                off += r * c
                from locfin.linalg import image as _image, kernel as _kernel

                fam_ker[x] = _kernel(phi)
                fam_im[x] = _image(phi)
            sub, _ = _submodule(m1, fam_ker)
            if lift_to_comodule(sub, scope).decision != LIFTABLE:
                return Verdict.refuted(witness="kernel", note="kernel submodule failed to lift")
            quot, _ = quotient_module(m2, fam_im)
            if lift_to_comodule(quot, scope).decision != LIFTABLE:
                return Verdict.refuted(witness="cokernel", note="quotient failed to lift")
    return Verdict.certified(note="sub/quotient/sum closure held on all trials")


def locally_finite_filtration(m: LeftModule | RightModule):
    """Chain of submodules generated by the first j basis generators, ending at m."""
    cat = m.cat
    f = cat.field
    from locfin.lincat import submodule as _submodule

    generators = [(x, k) for x in cat.objects for k in range(m.dim(x))]
    chain = []
    spans = {x: Subspace.zero(f, m.dim(x)) for x in cat.objects}
    for (x, k) in generators:
        vec = [f.one() if i == k else f.zero() for i in range(m.dim(x))]
        spans = {o: s for o, s in spans.items()}
        spans[x] = spans[x].sum(Subspace.from_vectors(f, m.dim(x), [vec]))
        # close under the action
        changed = True
        while changed:
            changed = False
            for (a, b), mats in m.action.items():
                src, tgt = (a, b) if m.side == "left" else (b, a)
                for mat in mats:
                    pushed = [mat.apply(list(row)) for row in spans[src].basis]
                    if pushed:
                        new = spans[tgt].sum(Subspace.from_vectors(f, m.dim(tgt), pushed))
                        if new.dim != spans[tgt].dim:
                            spans[tgt] = new
                            changed = True
        sub, _ = _submodule(m, spans)
        if not chain or chain[-1][0] != sub:
            chain.append((sub, dict(spans)))
        if sum(s.dim for s in spans.values()) == m.total_dim():
            break
    return chain
