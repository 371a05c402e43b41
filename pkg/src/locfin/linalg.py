"""Exact dense linear algebra: matrices, subspaces, structure-constant tensors.

All entries are raw field elements (see locfin.scalar).  Row reduction has a
transparent fast path over F_2 that packs rows into Python ints; results are
identical to the generic path (tested, not assumed).

Subspaces always carry the reduced-row-echelon basis, so subspace equality is
syntactic equality of canonical bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from locfin.scalar import FieldDescriptor, RawScalar

__all__ = [
    "Matrix",
    "Subspace",
    "Tensor3",
    "NoSolution",
    "AmbientMismatch",
    "DimensionMismatch",
    "dual_map",
]


class NoSolution(ValueError):
    """Inconsistent linear system."""


class AmbientMismatch(ValueError):
    """Subspaces live in different ambient spaces or fields."""


class DimensionMismatch(ValueError):
    """Matrix shapes do not line up."""


# ---------------------------------------------------------------------------
# row reduction


def _echelon_generic(field: FieldDescriptor, rows: list[list], cols: int):
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    n = len(rows)
    for c in range(cols):
        pr = None
        for i in range(r, n):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        if piv != field.one():
            inv = field.inv(piv)
            rows[r] = [field.mul(inv, v) for v in rows[r]]
        rr = rows[r]
        for i in range(n):
            if i != r and rows[i][c]:
                f = rows[i][c]
                ri = rows[i]
                rows[i] = [field.sub(ri[k], field.mul(f, rr[k])) for k in range(cols)]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return rows[:r], pivots


def _pack_bits(row: Sequence[int]) -> int:
    out = 0
    for c, v in enumerate(row):
        if v:
            out |= 1 << c
    return out


def _unpack_bits(bits: int, cols: int) -> list[int]:
    return [(bits >> c) & 1 for c in range(cols)]


def _echelon_gf2(rows: list[Sequence[int]], cols: int):
    packed = [_pack_bits(r) for r in rows]
    pivots: list[int] = []
    r = 0
    n = len(packed)
    for c in range(cols):
        mask = 1 << c
        pr = None
        for i in range(r, n):
            if packed[i] & mask:
                pr = i
                break
        if pr is None:
            continue
        packed[r], packed[pr] = packed[pr], packed[r]
        prow = packed[r]
        for i in range(n):
            if i != r and packed[i] & mask:
                packed[i] ^= prow
        pivots.append(c)
        r += 1
        if r == n:
            break
    return [_unpack_bits(b, cols) for b in packed[:r]], pivots


def echelon(field: FieldDescriptor, rows: Iterable[Sequence], cols: int):
    """Reduced row-echelon form: (nonzero rows, pivot columns)."""
    rows = [list(r) for r in rows]
    for r in rows:
        if len(r) != cols:
            raise DimensionMismatch(f"row of length {len(r)}, expected {cols}")
    if field.p == 2:
        return _echelon_gf2(rows, cols)
    return _echelon_generic(field, rows, cols)


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class Matrix:
    field: FieldDescriptor
    rows: int
    cols: int
    data: tuple

    @classmethod
    def from_rows(cls, field: FieldDescriptor, data: Iterable[Iterable], cols: int | None = None) -> "Matrix":
        grid = tuple(tuple(row) for row in data)
        if cols is None:
            if not grid:
                raise DimensionMismatch("cannot infer width of an empty matrix")
            cols = len(grid[0])
        for row in grid:
            if len(row) != cols:
                raise DimensionMismatch("ragged rows")
        return cls(field, len(grid), cols, grid)

    @classmethod
    def from_int_rows(cls, field: FieldDescriptor, data: Iterable[Iterable[int]], cols: int | None = None) -> "Matrix":
        return cls.from_rows(field, ([field.from_int(v) for v in row] for row in data), cols)

    @classmethod
    def zeros(cls, field: FieldDescriptor, rows: int, cols: int) -> "Matrix":
        z = field.zero()
        return cls(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: FieldDescriptor, n: int) -> "Matrix":
        z, o = field.zero(), field.one()
        return cls(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> RawScalar:
        i, j = ij
        return self.data[i][j]

    def is_zero(self) -> bool:
        return all(not v for row in self.data for v in row)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        f = self.field
        return Matrix(f, self.rows, self.cols, tuple(
            tuple(f.add(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(self.data, other.data)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        f = self.field
        return Matrix(f, self.rows, self.cols, tuple(
            tuple(f.sub(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(self.data, other.data)))

    def scale(self, c: RawScalar) -> "Matrix":
        f = self.field
        return Matrix(f, self.rows, self.cols, tuple(tuple(f.mul(c, v) for v in row) for row in self.data))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise DimensionMismatch("field mismatch in product")
        if self.cols != other.rows:
            raise DimensionMismatch(f"({self.rows}x{self.cols}) @ ({other.rows}x{other.cols})")
        f = self.field
        bt = list(zip(*other.data)) if other.data else [()] * other.cols
        out = []
        for arow in self.data:
            orow = []
            for bcol in bt:
                acc = f.zero()
                for a, b in zip(arow, bcol):
                    if a and b:
                        acc = f.add(acc, f.mul(a, b))
                orow.append(acc)
            out.append(tuple(orow))
        return Matrix(f, self.rows, other.cols, tuple(out))

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows, tuple(zip(*self.data)) if self.data else tuple(() for _ in range(self.cols)))

    def apply(self, vec: Sequence[RawScalar]) -> list[RawScalar]:
        if len(vec) != self.cols:
            raise DimensionMismatch("vector length != cols")
        f = self.field
        out = []
        for row in self.data:
            acc = f.zero()
            for a, b in zip(row, vec):
                if a and b:
                    acc = f.add(acc, f.mul(a, b))
            out.append(acc)
        return out

    def _same_shape(self, other: "Matrix") -> None:
        if self.field != other.field or self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatch("shape or field mismatch")

    def to_json(self):
        f = self.field
        return [[f.raw_to_json(v) for v in row] for row in self.data]

    @classmethod
    def from_json(cls, field: FieldDescriptor, data, rows: int, cols: int) -> "Matrix":
        grid = tuple(tuple(field.raw_from_json(v) for v in row) for row in data)
        m = cls(field, len(grid), cols if not grid else len(grid[0]), grid)
        if m.rows != rows or (grid and m.cols != cols):
            raise DimensionMismatch(f"expected {rows}x{cols} matrix")
        return cls(field, rows, cols, grid)


def dual_map(m: Matrix) -> Matrix:
    """The transpose, as a map between dual spaces."""
    return m.transpose()


def rank(m: Matrix) -> int:
    _, pivots = echelon(m.field, m.data, m.cols)
    return len(pivots)


def kernel(m: Matrix) -> "Subspace":
    """Null space of m, as a subspace of the domain F^cols."""
    reduced, pivots = echelon(m.field, m.data, m.cols)
    f = m.field
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    vectors = []
    for c in free:
        v = [f.zero()] * m.cols
        v[c] = f.one()
        for r, pc in enumerate(pivots):
            v[pc] = f.neg(reduced[r][c])
        vectors.append(v)
    return Subspace.from_vectors(f, m.cols, vectors)


def image(m: Matrix) -> "Subspace":
    """Column space of m, as a subspace of the codomain F^rows."""
    return Subspace.from_vectors(m.field, m.rows, list(zip(*m.data)) if m.data else [])


def row_space(m: Matrix) -> "Subspace":
    return Subspace.from_vectors(m.field, m.cols, m.data)


def solve(m: Matrix, rhs: Matrix) -> Matrix:
    """One solution X of m @ X = rhs; raises NoSolution if inconsistent."""
    if rhs.rows != m.rows:
        raise DimensionMismatch("rhs height != rows")
    aug_rows = [list(mr) + list(rr) for mr, rr in zip(m.data, rhs.data)]
    reduced, pivots = echelon(m.field, aug_rows, m.cols + rhs.cols)
    f = m.field
    for pc in pivots:
        if pc >= m.cols:
            raise NoSolution("inconsistent system")
    out = [[f.zero()] * rhs.cols for _ in range(m.cols)]
    for r, pc in enumerate(pivots):
        for j in range(rhs.cols):
            out[pc][j] = reduced[r][m.cols + j]
    return Matrix.from_rows(f, out, rhs.cols)


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    field: FieldDescriptor
    ambient: int
    basis: tuple  # RREF rows, pivots strictly increasing

    @classmethod
    def from_vectors(cls, field: FieldDescriptor, ambient: int, vectors: Iterable[Sequence]) -> "Subspace":
        reduced, _ = echelon(field, vectors, ambient)
        return cls(field, ambient, tuple(tuple(r) for r in reduced))

    @classmethod
    def zero(cls, field: FieldDescriptor, ambient: int) -> "Subspace":
        return cls(field, ambient, ())

    @classmethod
    def full(cls, field: FieldDescriptor, ambient: int) -> "Subspace":
        return cls.from_vectors(field, ambient, Matrix.identity(field, ambient).data)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _check(self, other: "Subspace") -> None:
        if self.field != other.field or self.ambient != other.ambient:
            raise AmbientMismatch(f"{self.ambient} vs {other.ambient}")

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.from_vectors(self.field, self.ambient, list(self.basis) + list(other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        # Zassenhaus: rref of [[A A],[B 0]]; rows with zero left half span
        # the intersection in their right half.
        self._check(other)
        n = self.ambient
        z = [self.field.zero()] * n
        block = [list(r) + list(r) for r in self.basis] + [list(r) + z for r in other.basis]
        reduced, _ = echelon(self.field, block, 2 * n)
        vectors = [row[n:] for row in reduced if not any(row[:n])]
        return Subspace.from_vectors(self.field, n, vectors)

    def contains_vector(self, vec: Sequence[RawScalar]) -> bool:
        if len(vec) != self.ambient:
            raise AmbientMismatch("vector length != ambient")
        return Subspace.from_vectors(self.field, self.ambient, list(self.basis) + [list(vec)]).dim == self.dim

    def contains(self, other: "Subspace") -> bool:
        self._check(other)
        return self.sum(other).dim == self.dim

    def basis_matrix(self) -> Matrix:
        """Basis rows as a dim x ambient matrix (the inclusion, row-wise)."""
        return Matrix(self.field, self.dim, self.ambient, self.basis)

    def to_json(self):
        f = self.field
        return {"ambient": self.ambient, "basis": [[f.raw_to_json(v) for v in row] for row in self.basis]}


def all_subspaces(field: FieldDescriptor, ambient: int) -> list[Subspace]:
    """Every subspace of F^ambient; only feasible over small prime fields."""
    if field.p is None:
        raise ValueError("the rationals have infinitely many subspaces")
    elems = field.elements()
    vectors = [[]]
    for _ in range(ambient):
        vectors = [v + [e] for v in vectors for e in elems]
    seen: dict[tuple, Subspace] = {}
    from itertools import combinations

    nonzero = [v for v in vectors if any(v)]
    # spans of at most `ambient` vectors cover all subspaces
    seen[()] = Subspace.zero(field, ambient)
    for k in range(1, ambient + 1):
        for combo in combinations(nonzero, k):
            s = Subspace.from_vectors(field, ambient, list(combo))
            seen.setdefault(s.basis, s)
    return sorted(seen.values(), key=lambda s: (s.dim, s.basis))


# ---------------------------------------------------------------------------
# structure-constant tensors


@dataclass(frozen=True)
class Tensor3:
    """Sparse 3-index tensor; entries (i, j, l) -> raw scalar, sorted, no zeros.

    Houses composition structure constants e_i ∘ e_j = Σ_l t[i,j,l] e_l and,
    read backwards, the comultiplication components dual to composition.
    """

    field: FieldDescriptor
    dims: tuple[int, int, int]
    entries: tuple  # ((i, j, l, raw), ...) sorted by (i, j, l)

    @classmethod
    def from_dict(cls, field: FieldDescriptor, dims: tuple[int, int, int], coeffs: dict) -> "Tensor3":
        items = []
        seen = set()
        for (i, j, l), v in sorted(coeffs.items()):
            if not v:
                continue
            if (i, j, l) in seen:
                raise ValueError(f"duplicate tensor coordinate {(i, j, l)}")
            seen.add((i, j, l))
            for idx, d in zip((i, j, l), dims):
                if not 0 <= idx < d:
                    raise ValueError(f"tensor index {(i, j, l)} out of range for dims {dims}")
            items.append((i, j, l, v))
        return cls(field, dims, tuple(items))

    def get(self, i: int, j: int, l: int) -> RawScalar:
        for a, b, c, v in self.entries:
            if (a, b, c) == (i, j, l):
                return v
        return self.field.zero()

    def slice_ij(self, i: int, j: int) -> list[RawScalar]:
        """Coefficient vector over the third index for fixed (i, j)."""
        out = [self.field.zero()] * self.dims[2]
        for a, b, c, v in self.entries:
            if a == i and b == j:
                out[c] = v
        return out

    def is_zero(self) -> bool:
        return not self.entries

    def to_json(self):
        f = self.field
        return [[i, j, l, f.raw_to_json(v)] for i, j, l, v in self.entries]

    @classmethod
    def from_json(cls, field: FieldDescriptor, dims: tuple[int, int, int], data) -> "Tensor3":
        coeffs = {}
        for item in data:
            i, j, l, v = item
            key = (int(i), int(j), int(l))
            if key in coeffs:
                raise ValueError(f"duplicate tensor coordinate {key}")
            coeffs[key] = field.raw_from_json(v)
        return cls.from_dict(field, dims, coeffs)
