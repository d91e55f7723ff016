"""Independent verification of Hilbert symbols and conic solvability.

The closed-form Hilbert symbol lives in :mod:`motquot.ntheory`; this module
provides the referee: an exhaustive search for primitive solutions of
a x^2 + b y^2 = z^2 over Z/p^3 (odd p) and Z/32 (p = 2), which by Hensel's
lemma decides solvability over the completion for squarefree coefficients,
plus a bounded-height search for actual rational points on split conics.
Nothing here consults the closed formulas, so agreement between the two
routes is a real check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from ..errors import SearchExhausted
from ..ntheory import (
    INF,
    hilbert_symbol,
    places_string,
    relevant_places,
    squarefree_part,
)


def _squarefree(x: int) -> int:
    return int(squarefree_part(Fraction(x)))


def hilbert_symbol_search(a: int, b: int, v) -> int:
    """(a,b)_v by direct solvability search over the completion, for
    squarefree nonzero a, b. Every return value is decided by exhibiting
    or exhausting primitive solutions; no symbol formulas are used."""
    a, b = _squarefree(a), _squarefree(b)
    if a == 0 or b == 0:
        raise ValueError("need nonzero entries")
    if v == INF:
        # over R: a x^2 + b y^2 = z^2 has a nontrivial zero unless the
        # left side is negative definite
        return 1 if (a > 0 or b > 0) else -1
    p = v
    if p == 2:
        # primitive means not all of x, y, z even: either x or y is odd
        # (z unconstrained), or x and y are even and z is odd
        mod = 32
        squares = {(z * z) % mod for z in range(mod)}
        odd_squares = {(z * z) % mod for z in range(1, mod, 2)}
        for x in range(mod):
            for y in range(mod):
                t = (a * x * x + b * y * y) % mod
                if (t in squares) if (x % 2 or y % 2) else (t in odd_squares):
                    return 1
        return -1
    # odd p: a primitive solution mod p^3 exists iff one exists with x = 1,
    # or with x divisible by p and y = 1; the remaining case (x, y both
    # divisible by p, z a unit) would force 1 = z^2 = 0 mod p^2.
    mod = p ** 3
    squares = {(z * z) % mod for z in range(mod)}
    for y in range(mod):
        if (a + b * y * y) % mod in squares:
            return 1
    for xx in range(0, mod, p):
        if (a * xx * xx + b) % mod in squares:
            return 1
    return -1


@dataclass
class QuaternionSymbol:
    """The conic a x^2 + b y^2 = z^2 together with what is known about its
    rational points."""

    a: int
    b: int
    status: str = "undecided"            # "split" | "nonsplit" | "undecided"
    point: tuple[int, int, int] | None = None
    obstruction: list | None = None

    def __post_init__(self):
        self.a = _squarefree(self.a)
        self.b = _squarefree(self.b)
        if self.a == 0 or self.b == 0:
            raise ValueError("symbol entries must be nonzero")

    def obstruction_string(self) -> str:
        if not self.obstruction:
            return "unramified"
        return f"ramified at: {places_string(self.obstruction)}"

    def verify(self) -> bool:
        """Re-check whatever the status claims."""
        if self.status == "split":
            x, y, z = self.point
            return ((x, y, z) != (0, 0, 0)
                    and self.a * x * x + self.b * y * y == z * z)
        if self.status == "nonsplit":
            return bool(self.obstruction) and all(
                hilbert_symbol(self.a, self.b, v) == -1
                for v in self.obstruction)
        return True


def search_conic_point(a: int, b: int,
                       bound: int = 10 ** 4) -> tuple[int, int, int] | None:
    """Smallest-height solution of a x^2 + b y^2 = z^2 with (x,y,z) != 0,
    scanning heights outward; None when the bound is exhausted."""
    for h in range(0, bound + 1):
        # new points at height h have max(|x|, |y|) = h (z is determined)
        for x, y in _height_shell(h):
            s = a * x * x + b * y * y
            if s < 0:
                continue
            z = isqrt(s)
            if z * z == s and (x, y, z) != (0, 0, 0):
                return (x, y, z)
    return None


def _height_shell(h: int):
    if h == 0:
        yield (0, 0)
        return
    for x in range(0, h):
        yield (x, h)
    for y in range(0, h + 1):
        yield (h, y)


def conic_rational_point(sym: QuaternionSymbol,
                         bound: int = 10 ** 4) -> QuaternionSymbol:
    """Decide the symbol: collect the places where it ramifies, and when
    there are none, exhibit a point (one exists by Hasse-Minkowski; not
    finding one within the bound is an explicit failure, never a guess)."""
    a, b = sym.a, sym.b
    ramified = [v for v in relevant_places(a, b)
                if hilbert_symbol(a, b, v) == -1]
    if ramified:
        return QuaternionSymbol(a, b, "nonsplit", None, ramified)
    point = search_conic_point(a, b, bound)
    if point is None:
        raise SearchExhausted(
            f"conic ({a},{b}) is split but no point of height <= {bound} "
            "was found; enlarge the bound")
    return QuaternionSymbol(a, b, "split", point, [])
