"""Dense univariate polynomials over pluggable coefficient fields.

Coefficients are stored constant term first with no trailing zeros, so the
zero polynomial has an empty tuple and ``degree`` is ``len(coeffs) - 1``.
The coefficient field is abstracted behind a tiny ring handle exposing
``zero()``, ``one()`` and ``coerce()``; plain rationals use the module
singleton ``RAT`` and number-field elements plug in through
:class:`motquot.exact.field.NumberField`.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import OrderBoundExceeded


class RatRing:
    """Coefficient handle for plain ``fractions.Fraction`` scalars."""

    key = ("rat",)

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def scalar_str(self, c) -> str:
        return str(c)

    def __repr__(self):
        return "Q"


RAT = RatRing()


class UniPoly:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs=()):
        zero = ring.zero()
        cs = [ring.coerce(c) if isinstance(c, (int, Fraction)) else c for c in coeffs]
        while cs and cs[-1] == zero:
            cs.pop()
        self.ring = ring
        self.coeffs = tuple(cs)

    # -- structure ---------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == self.ring.one()

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.ring.one()

    def coeff(self, i: int):
        return self.coeffs[i] if i < len(self.coeffs) else self.ring.zero()

    def _same_ring(self, other: "UniPoly"):
        if self.ring.key != other.ring.key:
            raise TypeError(f"mixed coefficient rings {self.ring!r} / {other.ring!r}")

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "UniPoly") -> "UniPoly":
        self._same_ring(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.ring, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        self._same_ring(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.ring, [self.coeff(i) - other.coeff(i) for i in range(n)])

    def __neg__(self) -> "UniPoly":
        return UniPoly(self.ring, [-c for c in self.coeffs])

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        self._same_ring(other)
        if self.is_zero() or other.is_zero():
            return UniPoly(self.ring)
        zero = self.ring.zero()
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(self.ring, out)

    def scale(self, c) -> "UniPoly":
        c = self.ring.coerce(c) if isinstance(c, (int, Fraction)) else c
        return UniPoly(self.ring, [a * c for a in self.coeffs])

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        lc = self.leading()
        if lc == self.ring.one():
            return self
        return UniPoly(self.ring, [a / lc for a in self.coeffs])

    def __pow__(self, n: int) -> "UniPoly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = UniPoly(self.ring, [self.ring.one()])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        """Exact quotient/remainder; the divisor's leading coefficient must
        be invertible (always true over a field)."""
        self._same_ring(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        zero = self.ring.zero()
        rem = list(self.coeffs)
        d = other.degree
        lc = other.leading()
        if len(rem) - 1 < d:
            return UniPoly(self.ring), self
        q = [zero] * (len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c == zero:
                continue
            f = c / lc
            q[i - d] = f
            for j, b in enumerate(other.coeffs):
                rem[i - d + j] = rem[i - d + j] - f * b
        return UniPoly(self.ring, q), UniPoly(self.ring, rem)

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def divides(self, other: "UniPoly") -> bool:
        if self.is_zero():
            return other.is_zero()
        return other.divmod(self)[1].is_zero()

    def eval_at(self, x):
        """Horner evaluation at a scalar of the coefficient field."""
        acc = self.ring.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(self.ring, [c * i for i, c in enumerate(self.coeffs)][1:])

    # -- identity ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, UniPoly)
            and self.ring.key == other.ring.key
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ring.key, self.coeffs))

    def to_str(self, sym: str = "T") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == self.ring.zero():
                continue
            cs = self.ring.scalar_str(c)
            neg = cs.startswith("-")
            mag = cs[1:] if neg else cs
            if i == 0:
                body = mag
            elif i == 1:
                body = f"{mag}*{sym}"
            else:
                body = f"{mag}*{sym}^{i}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"UniPoly({self.to_str()})"


def poly_x(ring=RAT) -> UniPoly:
    return UniPoly(ring, [ring.zero(), ring.one()])


def poly_const(c, ring=RAT) -> UniPoly:
    return UniPoly(ring, [c])


def xn_minus_1(n: int, ring=RAT) -> UniPoly:
    if n < 1:
        raise ValueError("need n >= 1")
    coeffs = [ring.coerce(-1)] + [ring.zero()] * (n - 1) + [ring.one()]
    return UniPoly(ring, coeffs)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm; gcd(0, 0) == 0."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_ext_gcd(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly, UniPoly]:
    """(g, s, t) with s*a + t*b == g, g monic unless zero."""
    ring = a.ring
    one = UniPoly(ring, [ring.one()])
    zero = UniPoly(ring)
    r0, r1 = a, b
    s0, s1 = one, zero
    t0, t1 = zero, one
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    lc = r0.leading()
    inv = ring.one() / lc
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


_CYCLO_CACHE: dict[int, UniPoly] = {}


def cyclotomic_poly(n: int) -> UniPoly:
    """The n-th cyclotomic polynomial over Q, computed by exact division of
    T^n - 1 by the cyclotomic polynomials of the proper divisors."""
    if n < 1:
        raise ValueError("need n >= 1")
    got = _CYCLO_CACHE.get(n)
    if got is not None:
        return got
    p = xn_minus_1(n)
    for d in range(1, n):
        if n % d == 0:
            q, r = p.divmod(cyclotomic_poly(d))
            if not r.is_zero():
                raise ArithmeticError(f"cyclotomic division failed at n={n}, d={d}")
            p = q
    _CYCLO_CACHE[n] = p
    return p


def order_of_t_mod(p: UniPoly, bound: int = 64) -> int:
    """Least N <= bound with T^N == 1 modulo p, i.e. p | T^N - 1."""
    ring = p.ring
    if p.degree < 1:
        raise ValueError("modulus must be nonconstant")
    t = poly_x(ring) % p
    acc = t
    one = UniPoly(ring, [ring.one()])
    for n in range(1, bound + 1):
        if acc == one:
            return n
        acc = (acc * t) % p
    raise OrderBoundExceeded(f"T has no order <= {bound} modulo {p.to_str()}")
