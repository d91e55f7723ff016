"""Exact dense matrices over the coefficient fields of this package.

Entries live in whatever ring handle the matrix carries (plain rationals via
``RAT`` or any :class:`motquot.exact.field.NumberField`), so all elimination
is exact. Sizes here are tiny (group representations in dimension <= 8), so
plain Gaussian elimination and the Faddeev-LeVerrier recurrence are entirely
adequate.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import NotFiniteOrder
from .poly import RAT, UniPoly


class Matrix:
    __slots__ = ("ring", "rows", "nrows", "ncols")

    def __init__(self, ring, rows):
        coerced = []
        for row in rows:
            coerced.append(tuple(
                ring.coerce(c) if isinstance(c, (int, Fraction)) else c
                for c in row))
        if coerced:
            w = len(coerced[0])
            if any(len(r) != w for r in coerced):
                raise ValueError("ragged rows")
        self.ring = ring
        self.rows = tuple(coerced)
        self.nrows = len(coerced)
        self.ncols = len(coerced[0]) if coerced else 0

    # -- constructors --------------------------------------------------------

    @staticmethod
    def identity(ring, n: int) -> "Matrix":
        one, zero = ring.one(), ring.zero()
        return Matrix(ring, [[one if i == j else zero for j in range(n)]
                             for i in range(n)])

    @staticmethod
    def zeros(ring, nrows: int, ncols: int) -> "Matrix":
        zero = ring.zero()
        return Matrix(ring, [[zero] * ncols for _ in range(nrows)])

    @staticmethod
    def diagonal(ring, entries) -> "Matrix":
        entries = list(entries)
        zero = ring.zero()
        n = len(entries)
        return Matrix(ring, [[entries[i] if i == j else zero
                              for j in range(n)] for i in range(n)])

    @staticmethod
    def block_diag(ring, blocks) -> "Matrix":
        blocks = list(blocks)
        n = sum(b.nrows for b in blocks)
        m = sum(b.ncols for b in blocks)
        zero = ring.zero()
        out = [[zero] * m for _ in range(n)]
        r = c = 0
        for b in blocks:
            for i in range(b.nrows):
                for j in range(b.ncols):
                    out[r + i][c + j] = b.rows[i][j]
            r += b.nrows
            c += b.ncols
        return Matrix(ring, out)

    # -- access ---------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i) -> tuple:
        return self.rows[i]

    def col(self, j) -> tuple:
        return tuple(r[j] for r in self.rows)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    # -- arithmetic ------------------------------------------------------------

    def _same_shape(self, other: "Matrix"):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.ring, [
            [a + b for a, b in zip(r1, r2)]
            for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.ring, [
            [a - b for a, b in zip(r1, r2)]
            for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        return Matrix(self.ring, [[-a for a in r] for r in self.rows])

    def scale(self, c) -> "Matrix":
        c = self.ring.coerce(c) if isinstance(c, (int, Fraction)) else c
        return Matrix(self.ring, [[a * c for a in r] for r in self.rows])

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("inner dimension mismatch")
        cols = [other.col(j) for j in range(other.ncols)]
        zero = self.ring.zero()
        out = []
        for r in self.rows:
            out.append([sum((a * b for a, b in zip(r, c)), zero)
                        for c in cols])
        return Matrix(self.ring, out)

    def apply(self, vec) -> tuple:
        """Matrix times column vector (given as a sequence)."""
        vec = [self.ring.coerce(v) if isinstance(v, (int, Fraction)) else v
               for v in vec]
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        zero = self.ring.zero()
        return tuple(sum((a * b for a, b in zip(r, vec)), zero)
                     for r in self.rows)

    def __pow__(self, n: int) -> "Matrix":
        if not self.is_square():
            raise ValueError("only square matrices have powers")
        if n < 0:
            return self.inverse() ** (-n)
        result = Matrix.identity(self.ring, self.nrows)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def transpose(self) -> "Matrix":
        return Matrix(self.ring, [self.col(j) for j in range(self.ncols)])

    def trace(self):
        if not self.is_square():
            raise ValueError("trace of a non-square matrix")
        acc = self.ring.zero()
        for i in range(self.nrows):
            acc = acc + self.rows[i][i]
        return acc

    def map_entries(self, f) -> "Matrix":
        return Matrix(self.ring, [[f(a) for a in r] for r in self.rows])

    # -- elimination -------------------------------------------------------------

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and the pivot column indices."""
        zero = self.ring.zero()
        rows = [list(r) for r in self.rows]
        pivots = []
        pr = 0
        for pc in range(self.ncols):
            pivot = None
            for i in range(pr, len(rows)):
                if rows[i][pc] != zero:
                    pivot = i
                    break
            if pivot is None:
                continue
            rows[pr], rows[pivot] = rows[pivot], rows[pr]
            inv = self.ring.one() / rows[pr][pc]
            rows[pr] = [a * inv for a in rows[pr]]
            for i in range(len(rows)):
                if i != pr and rows[i][pc] != zero:
                    f = rows[i][pc]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[pr])]
            pivots.append(pc)
            pr += 1
            if pr == len(rows):
                break
        return Matrix(self.ring, rows), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list[tuple]:
        """A basis of the right kernel, one tuple per free column."""
        red, pivots = self.rref()
        pivset = set(pivots)
        free = [j for j in range(self.ncols) if j not in pivset]
        zero, one = self.ring.zero(), self.ring.one()
        basis = []
        for fc in free:
            v = [zero] * self.ncols
            v[fc] = one
            for pi, pc in enumerate(pivots):
                v[pc] = -red.rows[pi][fc]
            basis.append(tuple(v))
        return basis

    def solve(self, b):
        """A particular solution of A x = b, or None when inconsistent."""
        b = [self.ring.coerce(v) if isinstance(v, (int, Fraction)) else v
             for v in b]
        if len(b) != self.nrows:
            raise ValueError("right-hand side length mismatch")
        aug = Matrix(self.ring, [list(r) + [bv]
                                 for r, bv in zip(self.rows, b)])
        red, pivots = aug.rref()
        if self.ncols in pivots:
            return None
        zero = self.ring.zero()
        x = [zero] * self.ncols
        for pi, pc in enumerate(pivots):
            x[pc] = red.rows[pi][self.ncols]
        return tuple(x)

    def det(self):
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        zero = self.ring.zero()
        rows = [list(r) for r in self.rows]
        n = self.nrows
        acc = self.ring.one()
        for c in range(n):
            pivot = None
            for i in range(c, n):
                if rows[i][c] != zero:
                    pivot = i
                    break
            if pivot is None:
                return zero
            if pivot != c:
                rows[c], rows[pivot] = rows[pivot], rows[c]
                acc = -acc
            acc = acc * rows[c][c]
            inv = self.ring.one() / rows[c][c]
            for i in range(c + 1, n):
                if rows[i][c] != zero:
                    f = rows[i][c] * inv
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
        return acc

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        ident = Matrix.identity(self.ring, n)
        aug = Matrix(self.ring, [list(r) + list(i)
                                 for r, i in zip(self.rows, ident.rows)])
        red, pivots = aug.rref()
        if pivots != tuple(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return Matrix(self.ring, [r[n:] for r in red.rows])

    # -- invariants ---------------------------------------------------------------

    def charpoly(self) -> UniPoly:
        """Characteristic polynomial det(T*I - A) by the Faddeev-LeVerrier
        recurrence (exact; uses only ring operations and division by small
        integers)."""
        if not self.is_square():
            raise ValueError("characteristic polynomial of a non-square matrix")
        n = self.nrows
        ring = self.ring
        coeffs = [ring.zero()] * (n + 1)
        coeffs[n] = ring.one()
        m = Matrix.identity(ring, n)
        for k in range(1, n + 1):
            m = self * m
            c = -(m.trace() / k)
            coeffs[n - k] = c
            if k < n:
                m = m + Matrix.identity(ring, n).scale(c)
        return UniPoly(ring, coeffs)

    def minimal_polynomial(self) -> UniPoly:
        """The monic minimal polynomial, found as the first linear dependence
        among the vectorized powers I, A, A^2, ..."""
        if not self.is_square():
            raise ValueError("minimal polynomial of a non-square matrix")
        ring = self.ring
        n = self.nrows
        powers = [Matrix.identity(ring, n)]
        for k in range(1, n + 1):
            powers.append(powers[-1] * self)
            # columns are vec(A^0) ... vec(A^{k-1}); solve for vec(A^k)
            stacked = Matrix(ring, [
                [powers[m].rows[i][j] for m in range(k)]
                for i in range(n) for j in range(n)])
            target = [powers[k].rows[i][j] for i in range(n) for j in range(n)]
            sol = stacked.solve(target)
            if sol is not None:
                return UniPoly(ring, [-c for c in sol] + [ring.one()])
        raise ArithmeticError("no dependence up to the matrix dimension")

    def eval_poly(self, p: UniPoly) -> "Matrix":
        """p(A) by Horner's rule."""
        if not self.is_square():
            raise ValueError("polynomial evaluation needs a square matrix")
        n = self.nrows
        acc = Matrix.zeros(self.ring, n, n)
        for c in reversed(p.coeffs):
            acc = acc * self + Matrix.identity(self.ring, n).scale(c)
        return acc

    def multiplicative_order(self, bound: int = 64) -> int:
        """Least n <= bound with A^n == I."""
        if not self.is_square():
            raise NotFiniteOrder("non-square matrix")
        ident = Matrix.identity(self.ring, self.nrows)
        acc = self
        for n in range(1, bound + 1):
            if acc == ident:
                return n
            acc = acc * self
        raise NotFiniteOrder(f"matrix has no multiplicative order <= {bound}")

    # -- identity -------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, Matrix)
                and self.rows == other.rows)

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(
            ", ".join(self.ring.scalar_str(a) if hasattr(self.ring, "scalar_str")
                      else str(a) for a in r)
            for r in self.rows)
        return f"Matrix[{body}]"
