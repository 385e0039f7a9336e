"""Exact integer linear algebra.

Matrices act on column vectors and composition is left multiplication:
``(a @ b) @ v == a @ (b @ v)``.  Every entry is a Python ``int``, so nothing
ever overflows.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, NamedTuple, Sequence

Vector = tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major."""

    nrows: int
    ncols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.nrows < 0 or self.ncols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.nrows * self.ncols:
            raise ValueError(
                f"expected {self.nrows * self.ncols} entries, got {len(self.entries)}"
            )
        for x in self.entries:
            if not isinstance(x, int) or isinstance(x, bool):
                raise TypeError(f"matrix entries must be int, got {type(x).__name__}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: int | None = None) -> IntMatrix:
        rows = [tuple(int(x) for x in r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, cols: Iterable[Sequence[int]], nrows: int | None = None) -> IntMatrix:
        cols = [tuple(int(x) for x in c) for c in cols]
        if nrows is None:
            if not cols:
                raise ValueError("nrows is required for a matrix without columns")
            nrows = len(cols[0])
        for c in cols:
            if len(c) != nrows:
                raise ValueError("ragged columns")
        return cls(nrows, len(cols), tuple(c[i] for i in range(nrows) for c in cols))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> IntMatrix:
        return cls(nrows, ncols, (0,) * (nrows * ncols))

    @classmethod
    def diagonal(cls, diag: Sequence[int], nrows: int | None = None,
                 ncols: int | None = None) -> IntMatrix:
        nrows = len(diag) if nrows is None else nrows
        ncols = len(diag) if ncols is None else ncols
        rows = [[0] * ncols for _ in range(nrows)]
        for i, d in enumerate(diag):
            rows[i][i] = d
        return cls.from_rows(rows, ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(ij)
        return self.entries[i * self.ncols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.ncols:(i + 1) * self.ncols]

    def column(self, j: int) -> Vector:
        return self.entries[j::self.ncols] if self.ncols else ()

    def rows(self) -> list[Vector]:
        return [self.row(i) for i in range(self.nrows)]

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows()]

    @property
    def T(self) -> IntMatrix:
        return IntMatrix.from_rows(self.columns(), self.nrows)

    def apply(self, v: Sequence[int]) -> Vector:
        if len(v) != self.ncols:
            raise ValueError(f"vector of length {len(v)} for a {self.shape} matrix")
        return tuple(sum(a * b for a, b in zip(self.row(i), v)) for i in range(self.nrows))

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = [self.apply(c) for c in other.columns()]
            return IntMatrix.from_columns(cols, self.nrows)
        return self.apply(other)

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.nrows, self.ncols,
                         tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> IntMatrix:
        return IntMatrix(self.nrows, self.ncols, tuple(-a for a in self.entries))

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return self + (-other)

    def hstack(self, other: IntMatrix) -> IntMatrix:
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        return IntMatrix.from_rows([a + b for a, b in zip(self.rows(), other.rows())],
                                   self.ncols + other.ncols)

    def vstack(self, other: IntMatrix) -> IntMatrix:
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch")
        return IntMatrix(self.nrows + other.nrows, self.ncols, self.entries + other.entries)

    def select_rows(self, idx: Sequence[int]) -> IntMatrix:
        return IntMatrix.from_rows([self.row(i) for i in idx], self.ncols)

    def select_columns(self, idx: Sequence[int]) -> IntMatrix:
        return IntMatrix.from_columns([self.column(j) for j in idx], self.nrows)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def det(self) -> int:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        return _bareiss_det(self.rows())

    def rank(self) -> int:
        d = snf(self).diag
        return sum(1 for i in range(min(d.shape)) if d[i, i] != 0)

    def is_unimodular(self) -> bool:
        return self.nrows == self.ncols and abs(self.det()) == 1

    def inverse(self) -> IntMatrix:
        """Integer inverse of a unimodular matrix."""
        if not self.is_unimodular():
            raise ValueError("matrix is not unimodular")
        full = _smith(self)
        # left @ m @ right = diag(1,...,1) up to sign, so m^-1 = right @ diag @ left
        return full.right @ full.diag @ full.left

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r})" if self.nrows else f"IntMatrix(0x{self.ncols})"


def _bareiss_det(rows: list[Sequence[int]]) -> int:
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a small square integer matrix given by rows."""
    return _bareiss_det(list(rows))


class SmithDecomposition(NamedTuple):
    """``left @ m @ right == diag`` with unimodular ``left`` and ``right``."""

    left: IntMatrix
    diag: IntMatrix
    right: IntMatrix


class _FullSmith(NamedTuple):
    left: IntMatrix
    diag: IntMatrix
    right: IntMatrix
    left_inv: IntMatrix
    right_inv: IntMatrix


def _smith(m: IntMatrix) -> _FullSmith:
    r, c = m.shape
    a = [list(row) for row in m.rows()]
    L = [[int(i == j) for j in range(r)] for i in range(r)]
    Li = [[int(i == j) for j in range(r)] for i in range(r)]
    R = [[int(i == j) for j in range(c)] for i in range(c)]
    Ri = [[int(i == j) for j in range(c)] for i in range(c)]

    # row_i += q * row_j, mirrored on L (left) and L^-1 (right side)
    def row_add(i, j, q):
        a[i] = [x + q * y for x, y in zip(a[i], a[j])]
        L[i] = [x + q * y for x, y in zip(L[i], L[j])]
        for row in Li:
            row[j] -= q * row[i]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        L[i], L[j] = L[j], L[i]
        for row in Li:
            row[i], row[j] = row[j], row[i]

    def row_neg(i):
        a[i] = [-x for x in a[i]]
        L[i] = [-x for x in L[i]]
        for row in Li:
            row[i] = -row[i]

    # col_j += q * col_i
    def col_add(j, i, q):
        for row in a:
            row[j] += q * row[i]
        for row in R:
            row[j] += q * row[i]
        Ri[i] = [x - q * y for x, y in zip(Ri[i], Ri[j])]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in R:
            row[i], row[j] = row[j], row[i]
        Ri[i], Ri[j] = Ri[j], Ri[i]

    for t in range(min(r, c)):
        while True:
            best = None
            for i in range(t, r):
                for j in range(t, c):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            if best[0] != t:
                row_swap(t, best[0])
            if best[1] != t:
                col_swap(t, best[1])
            p = a[t][t]
            dirty = False
            for i in range(t + 1, r):
                if a[i][t]:
                    row_add(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, c):
                if a[t][j]:
                    col_add(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(t + 1, r)
                        if any(a[i][j] % p for j in range(t + 1, c))), None)
            if bad is None:
                break
            row_add(t, bad, 1)
        if best is None:
            break
        if a[t][t] < 0:
            row_neg(t)

    def mk(rows, ncols):
        return IntMatrix.from_rows(rows, ncols)

    return _FullSmith(mk(L, r), mk(a, c), mk(R, c), mk(Li, r), mk(Ri, c))


def snf(m: IntMatrix) -> SmithDecomposition:
    """Smith normal form with unimodular transforms.

    The diagonal entries are nonnegative and each divides the next.
    """
    full = _smith(m)
    return SmithDecomposition(full.left, full.diag, full.right)


def _diag_entries(d: IntMatrix) -> list[int]:
    return [d[i, i] for i in range(min(d.shape))]


def hnf_with_transform(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Column-style Hermite normal form ``h = m @ u`` with ``u`` unimodular.

    Pivots are positive and move strictly right as the pivot row increases;
    entries left of a pivot in its row lie in ``[0, pivot)``.  Zero columns
    come last.
    """
    r, c = m.shape
    a = [list(row) for row in m.rows()]
    u = [[int(i == j) for j in range(c)] for i in range(c)]

    def col_op(j, i, q):  # col_j += q col_i
        for row in a:
            row[j] += q * row[i]
        for row in u:
            row[j] += q * row[i]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in u:
            row[i], row[j] = row[j], row[i]

    def col_neg(j):
        for row in a:
            row[j] = -row[j]
        for row in u:
            row[j] = -row[j]

    k = 0
    pivots = []
    for i in range(r):
        if k == c:
            break
        while True:
            nz = [j for j in range(k, c) if a[i][j]]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(a[i][j]))
            if j0 != k:
                col_swap(k, j0)
            done = True
            for j in range(k + 1, c):
                if a[i][j]:
                    col_op(j, k, -(a[i][j] // a[i][k]))
                    done = done and a[i][j] == 0
            if done:
                break
        if a[i][k] == 0:
            continue
        if a[i][k] < 0:
            col_neg(k)
        p = a[i][k]
        for j in range(k):
            q = a[i][j] // p
            if q:
                col_op(j, k, -q)
        pivots.append((i, k))
        k += 1
    return IntMatrix.from_rows(a, c), IntMatrix.from_rows(u, c)


def hnf(m: IntMatrix) -> IntMatrix:
    """Column-style Hermite normal form; same integer column span as ``m``."""
    return hnf_with_transform(m)[0]


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """Columns form a basis of ``{v in Z^n : m v = 0}``.

    The basis is returned in column Hermite form, so equal kernels give
    identical output.
    """
    h, u = hnf_with_transform(m)
    zero_cols = [j for j in range(m.ncols) if not any(h.column(j))]
    if not zero_cols:
        return IntMatrix.zeros(m.ncols, 0)
    return hnf(u.select_columns(zero_cols))


def rank(m: IntMatrix) -> int:
    return m.rank()


def solve(m: IntMatrix, b: Sequence[int]) -> Vector | None:
    """An integer solution of ``m x = b``, or None if there is none."""
    if len(b) != m.nrows:
        raise ValueError("right-hand side has the wrong length")
    full = _smith(m)
    y = full.left.apply(b)
    d = _diag_entries(full.diag)
    z = [0] * m.ncols
    for i, yi in enumerate(y):
        di = d[i] if i < len(d) else 0
        if di == 0:
            if yi != 0:
                return None
        else:
            if yi % di:
                return None
            z[i] = yi // di
    return full.right.apply(z)


def saturate_sublattice(gens: IntMatrix) -> IntMatrix:
    """Basis (columns) of the lattice ``Z^n`` intersected with the rational span of ``gens``."""
    full = _smith(gens)
    rk = sum(1 for x in _diag_entries(full.diag) if x)
    if rk == 0:
        return IntMatrix.zeros(gens.nrows, 0)
    basis = full.left_inv.select_columns(range(rk))
    return hnf(basis).select_columns(range(rk))


class CokernelInvariants(NamedTuple):
    torsion: tuple[int, ...]
    free_rank: int


def cokernel_invariants(m: IntMatrix) -> CokernelInvariants:
    """Invariant factors (> 1) and free rank of ``Z^nrows / m Z^ncols``."""
    d = _diag_entries(snf(m).diag)
    rk = sum(1 for x in d if x)
    return CokernelInvariants(tuple(x for x in d if x > 1), m.nrows - rk)


@dataclass(frozen=True)
class Quotient:
    """Presentation of ``Z^n / span(relations)`` as ``Z^k + Z/t_1 + ... + Z/t_s``.

    ``projection`` maps ``Z^n`` onto quotient coordinates (free first, then
    torsion); ``section`` sends quotient coordinates back to a preimage.
    """

    free_rank: int
    torsion: tuple[int, ...]
    projection: IntMatrix
    section: IntMatrix

    @property
    def dim(self) -> int:
        return self.free_rank + len(self.torsion)

    def reduce(self, y: Sequence[int]) -> Vector:
        return reduce_vector(y, self.free_rank, self.torsion)

    def project(self, x: Sequence[int]) -> Vector:
        return self.reduce(self.projection.apply(x))

    def lift(self, y: Sequence[int]) -> Vector:
        return self.section.apply(y)


def reduce_vector(y: Sequence[int], free_rank: int, torsion: Sequence[int]) -> Vector:
    return tuple(y[:free_rank]) + tuple(v % t for v, t in zip(y[free_rank:], torsion))


def quotient(relations: IntMatrix) -> Quotient:
    """Cokernel of ``relations`` with canonical free coordinates.

    The free coordinates are the Hermite basis of the covectors vanishing on
    the relations, so the result does not depend on pivoting choices; the
    torsion coordinates come from the Smith form.
    """
    n = relations.nrows
    if relations.ncols == 0 or relations.is_zero():
        eye = IntMatrix.identity(n)
        return Quotient(n, (), eye, eye)
    full = _smith(relations)
    d = _diag_entries(full.diag)
    d += [0] * (n - len(d))
    free = [i for i in range(n) if d[i] == 0]
    tors = [i for i in range(n) if d[i] > 1]
    proj_rows = [full.left.row(i) for i in tors]
    sec_cols = [full.left_inv.column(i) for i in tors]
    if free:
        canon = kernel_basis(relations.T).T  # rows vanish on every relation
        old_sec = full.left_inv.select_columns(free)
        w_inv = (canon @ old_sec).inverse()
        proj_rows = canon.rows() + proj_rows
        sec_cols = (old_sec @ w_inv).columns() + sec_cols
    return Quotient(
        len(free),
        tuple(d[i] for i in tors),
        IntMatrix.from_rows(proj_rows, n),
        IntMatrix.from_columns(sec_cols, n),
    )


def primitive(v: Sequence[int]) -> Vector:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("the zero vector has no primitive multiple")
    return tuple(x // g for x in v)


def is_primitive(v: Sequence[int]) -> bool:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g == 1


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def cross_kernel(rows: Sequence[Sequence[int]], n: int) -> Vector | None:
    """Generalized cross product of ``n - 1`` rows in ``Z^n``.

    Returns the vector of signed maximal minors, which spans the kernel when
    the rows are independent; None when they are dependent.
    """
    if len(rows) != n - 1:
        raise ValueError("need exactly n - 1 rows")
    out = []
    for i in range(n):
        minor = [[r[j] for j in range(n) if j != i] for r in rows]
        out.append((-1) ** i * _bareiss_det(minor))
    return tuple(out) if any(out) else None
