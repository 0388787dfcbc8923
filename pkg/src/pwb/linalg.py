"""Dense exact linear algebra over Q(zeta_N)."""
from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .errors import SingularMatrixError
from .scalars import Cyclo

_ZERO = Cyclo.of(0)
_ONE = Cyclo.of(1)


def _c(x) -> Cyclo:
    return x if isinstance(x, Cyclo) else Cyclo.of(x)


class Matrix:
    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable]):
        rs = [[_c(x) for x in row] for row in rows]
        if rs and any(len(r) != len(rs[0]) for r in rs):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rs)
        object.__setattr__(self, "nrows", len(rs))
        object.__setattr__(self, "ncols", len(rs[0]) if rs else 0)

    def __setattr__(self, *a):
        raise AttributeError("Matrix is immutable")

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix([[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(nrows: int, ncols: int) -> "Matrix":
        return Matrix([[_ZERO] * ncols for _ in range(nrows)])

    @staticmethod
    def diagonal(entries: Sequence) -> "Matrix":
        n = len(entries)
        return Matrix([[_c(entries[i]) if i == j else _ZERO for j in range(n)]
                       for i in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> Cyclo:
        return self.rows[ij[0]][ij[1]]

    def row(self, i: int) -> list[Cyclo]:
        return list(self.rows[i])

    def column(self, j: int) -> list[Cyclo]:
        return [r[j] for r in self.rows]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            return False
        return all(a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))

    __hash__ = None

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix([[a + b for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix([[a - b for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.rows, other.rows)])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError("dimension mismatch")
            cols = [other.column(j) for j in range(other.ncols)]
            return Matrix([[_dot(r, col) for col in cols] for r in self.rows])
        return Matrix([[a * _c(other) for a in r] for r in self.rows])

    def __pow__(self, k: int) -> "Matrix":
        if k < 0:
            return self.inverse() ** (-k)
        result, base = Matrix.identity(self.nrows), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def apply(self, vec: Sequence) -> list[Cyclo]:
        v = [_c(x) for x in vec]
        return [_dot(r, v) for r in self.rows]

    def transpose(self) -> "Matrix":
        return Matrix([[self.rows[i][j] for i in range(self.nrows)]
                       for j in range(self.ncols)])

    def trace(self) -> Cyclo:
        acc = _ZERO
        for i in range(self.nrows):
            acc = acc + self.rows[i][i]
        return acc

    def is_identity(self) -> bool:
        return self == Matrix.identity(self.nrows)

    def is_diagonal(self) -> bool:
        return all(self.rows[i][j].is_zero()
                   for i in range(self.nrows) for j in range(self.ncols) if i != j)

    def rref(self) -> tuple["Matrix", list[int]]:
        """Reduced row echelon form and pivot columns."""
        work = [list(r) for r in self.rows]
        pivots: list[int] = []
        row_at = 0
        for col in range(self.ncols):
            pr = next((r for r in range(row_at, len(work)) if not work[r][col].is_zero()), None)
            if pr is None:
                continue
            work[row_at], work[pr] = work[pr], work[row_at]
            inv = work[row_at][col].inverse()
            work[row_at] = [x * inv for x in work[row_at]]
            lead = work[row_at]
            for r in range(len(work)):
                if r != row_at and not work[r][col].is_zero():
                    f = work[r][col]
                    work[r] = [x - f * y for x, y in zip(work[r], lead)]
            pivots.append(col)
            row_at += 1
            if row_at == len(work):
                break
        return Matrix(work), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> list[list[Cyclo]]:
        """Basis of the right nullspace, in reduced echelon shape."""
        reduced, pivots = self.rref()
        free = [j for j in range(self.ncols) if j not in pivots]
        basis = []
        for f in free:
            vec = [_ZERO] * self.ncols
            vec[f] = _ONE
            for i, p in enumerate(pivots):
                vec[p] = -reduced.rows[i][f]
            basis.append(vec)
        return basis

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise SingularMatrixError("not square")
        n = self.nrows
        aug = Matrix([list(self.rows[i]) + Matrix.identity(n).rows[i] for i in range(n)])
        reduced, pivots = aug.rref()
        if pivots[:n] != list(range(n)):
            raise SingularMatrixError("matrix is singular")
        return Matrix([r[n:] for r in reduced.rows])

    def det(self) -> Cyclo:
        if self.nrows != self.ncols:
            raise SingularMatrixError("not square")
        work = [list(r) for r in self.rows]
        n = self.nrows
        acc = _ONE
        for col in range(n):
            pr = next((r for r in range(col, n) if not work[r][col].is_zero()), None)
            if pr is None:
                return _ZERO
            if pr != col:
                work[col], work[pr] = work[pr], work[col]
                acc = -acc
            pivot = work[col][col]
            acc = acc * pivot
            inv = pivot.inverse()
            for r in range(col + 1, n):
                if not work[r][col].is_zero():
                    f = work[r][col] * inv
                    work[r] = [x - f * y for x, y in zip(work[r], work[col])]
        return acc

    def charpoly_coeffs(self) -> list[Cyclo]:
        """[a_0, ..., a_{n-1}] with det(tI - M) = t^n + a_{n-1} t^{n-1} + ... + a_0.

        Faddeev-LeVerrier; exact over characteristic zero.
        """
        n = self.nrows
        coeffs = [_ZERO] * n
        b = Matrix.identity(n)
        a = _ONE
        for k in range(1, n + 1):
            b = self * b
            a = -(b.trace()) / k
            coeffs[n - k] = a
            if k < n:
                b = b + Matrix.diagonal([a] * n)
        return coeffs

    def minpoly_coeffs(self) -> list[Cyclo]:
        """Ascending coefficients of the monic minimal polynomial."""
        n = self.nrows
        dim = n * n
        powers: list[list[Cyclo]] = []
        current = Matrix.identity(n)
        for _ in range(n + 1):
            powers.append([current.rows[i][j] for i in range(n) for j in range(n)])
            current = current * self
        # find least k with M^k dependent on lower powers
        for k in range(1, n + 1):
            rows = [powers[i] for i in range(k)]
            target = powers[k]
            sol = _express_in_rows(rows, target, dim)
            if sol is not None:
                return [-c for c in sol] + [_ONE]
        raise AssertionError("minimal polynomial must exist by Cayley-Hamilton")

    def conductor(self) -> int:
        from .scalars import lcm as _lcm
        n = 1
        for r in self.rows:
            for x in r:
                n = _lcm(n, x.n)
        return n

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in r) for r in self.rows)

    def __repr__(self):
        return f"Matrix([{'; '.join(', '.join(str(x) for x in r) for r in self.rows)}])"


def _dot(a: Sequence[Cyclo], b: Sequence[Cyclo]) -> Cyclo:
    acc = _ZERO
    for x, y in zip(a, b):
        if not (x.is_zero() or y.is_zero()):
            acc = acc + x * y
    return acc


def _express_in_rows(rows: list[list[Cyclo]], target: list[Cyclo], ncols: int):
    """Coefficients expressing target in span(rows), or None."""
    work = [list(r) + [(_ONE if i == j else _ZERO) for j in range(len(rows))]
            for i, r in enumerate(rows)]
    m = Matrix(work)
    reduced, pivots = m.rref()
    coeffs = [_ZERO] * len(rows)
    tgt = list(target)
    for i, p in enumerate(pivots):
        if p >= ncols:
            continue
        f = tgt[p]
        if not f.is_zero():
            lead = reduced.rows[i]
            tgt = [x - f * y for x, y in zip(tgt, lead[:ncols])]
            for j in range(len(rows)):
                coeffs[j] = coeffs[j] + f * lead[ncols + j]
    if any(not x.is_zero() for x in tgt):
        return None
    return coeffs


def solve_linear(a: Matrix, b: Sequence) -> Optional[list[Cyclo]]:
    """One solution of A x = b, or None if inconsistent."""
    bv = [_c(x) for x in b]
    aug = Matrix([list(a.rows[i]) + [bv[i]] for i in range(a.nrows)])
    reduced, pivots = aug.rref()
    if a.ncols in pivots:
        return None
    x = [_ZERO] * a.ncols
    for i, p in enumerate(pivots):
        x[p] = reduced.rows[i][a.ncols]
    return x
