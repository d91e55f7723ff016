"""Exact arithmetic in small number fields.

Four kinds of field are supported, each realized as Q[T]/(m) for an explicit
modulus m:

- ``rational``: m = T, so every element is a constant.
- ``cyclotomic`` M: m = the M-th cyclotomic polynomial, generator zeta_M.
- ``quadratic`` d: m = T^2 - d for squarefree d, generator sqrt(d).
- ``relative_quadratic``: a monic degree-2 extension of one of the above,
  with coefficients drawn from the base field.

Elements are coefficient tuples reduced against the modulus; inversion runs
the extended Euclidean algorithm, which doubles as an irreducibility check
(a nontrivial gcd with the modulus can only appear if the modulus splits).
A :class:`NumberField` also implements the coefficient-ring protocol of
:class:`motquot.exact.poly.UniPoly`, so polynomials over any of these fields
come for free.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from ..errors import MixedBaseField, NotFiniteOrder, UnsupportedAction
from ..ntheory import squarefree_part
from .poly import RAT, UniPoly, cyclotomic_poly, poly_ext_gcd


class NumberField:
    """A field Q[T]/(m), acting as its own coefficient-ring handle."""

    def __init__(self, kind: str, key: tuple, scalar_ring, modulus: UniPoly,
                 base: "NumberField | None" = None, label: str = ""):
        self.kind = kind
        self.key = key
        self.scalar_ring = scalar_ring
        self.modulus = modulus
        self.base = base
        self.label = label
        self.rel_degree = modulus.degree

    # -- ring protocol (UniPoly coefficient handle) -------------------------

    def zero(self) -> "FieldElem":
        return FieldElem(self, ())

    def one(self) -> "FieldElem":
        return FieldElem(self, (self.scalar_ring.one(),))

    def coerce(self, x) -> "FieldElem":
        if isinstance(x, FieldElem):
            if x.field.key == self.key:
                return x
            if self.base is not None and x.field.key == self.base.key:
                return FieldElem(self, (x,))
            if x.field.kind == "rational":
                return self.coerce(x.as_fraction())
            raise MixedBaseField(
                f"cannot place element of {x.field} into {self}")
        if isinstance(x, (int, Fraction)):
            c = self.scalar_ring.coerce(x) if self.base is None \
                else self.base.coerce(x)
            return FieldElem(self, (c,))
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def scalar_str(self, c) -> str:
        return elem_to_str(c)

    # -- structure -----------------------------------------------------------

    def gen(self) -> "FieldElem":
        if self.kind == "rational":
            return self.zero()
        zero = self.scalar_ring.zero()
        one = self.scalar_ring.one()
        return FieldElem(self, (zero, one))

    def from_coeffs(self, coeffs) -> "FieldElem":
        ring = self.scalar_ring
        cs = [ring.coerce(c) if isinstance(c, (int, Fraction)) else c
              for c in coeffs]
        p = UniPoly(ring, cs) % self.modulus
        return FieldElem(self, p.coeffs)

    def degree_over_q(self) -> int:
        if self.base is None:
            return self.rel_degree if self.kind != "rational" else 1
        return self.rel_degree * self.base.degree_over_q()

    # -- roots of unity ------------------------------------------------------

    def unit_root_order(self) -> int:
        """The number of roots of unity in the field (the torsion group is
        cyclic of this order)."""
        if self.kind == "rational":
            return 2
        if self.kind == "quadratic":
            d = self.key[1]
            if d == -1:
                return 4
            if d == -3:
                return 6
            return 2
        if self.kind == "cyclotomic":
            m = self.key[1]
            return m if m % 2 == 0 else 2 * m
        raise UnsupportedAction(
            "root-of-unity inventory is not implemented for relative "
            "quadratic extensions")

    def unit_root_gen(self) -> "FieldElem":
        """A generator of the group of roots of unity."""
        if self.kind == "rational":
            return self.coerce(-1)
        if self.kind == "quadratic":
            d = self.key[1]
            z = self.gen()
            if d == -1:
                return z
            if d == -3:
                return (z + 1) / 2
            return self.coerce(-1)
        if self.kind == "cyclotomic":
            m = self.key[1]
            z = self.gen()
            if m % 2 == 0:
                return z
            return -(z ** ((m + 1) // 2))
        raise UnsupportedAction(
            "root-of-unity inventory is not implemented for relative "
            "quadratic extensions")

    def contains_nth_roots(self, n: int) -> bool:
        """Whether the field contains all n-th roots of unity."""
        if n < 1:
            raise ValueError("need n >= 1")
        return self.unit_root_order() % n == 0

    # -- identity ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, NumberField) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return self.label


class FieldElem:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs: tuple):
        zero = field.scalar_ring.zero()
        cs = list(coeffs)
        while cs and cs[-1] == zero:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    def _poly(self) -> UniPoly:
        return UniPoly(self.field.scalar_ring, self.coeffs)

    def _pair(self, other) -> "FieldElem":
        return self.field.coerce(other)

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self == self.field.one()

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_rational(self) -> bool:
        """Whether the element lies in Q (through all levels of the tower)."""
        if len(self.coeffs) > 1:
            return False
        if not self.coeffs:
            return True
        c = self.coeffs[0]
        return c.is_rational() if isinstance(c, FieldElem) else True

    def as_fraction(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        if len(self.coeffs) > 1:
            raise ValueError(f"{self!r} is not rational")
        c = self.coeffs[0]
        return c.as_fraction() if isinstance(c, FieldElem) else c

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = self._pair(other)
        n = max(len(self.coeffs), len(other.coeffs))
        zero = self.field.scalar_ring.zero()

        def at(t, i):
            return t[i] if i < len(t) else zero

        return FieldElem(self.field, tuple(
            at(self.coeffs, i) + at(other.coeffs, i) for i in range(n)))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._pair(other))

    def __rsub__(self, other):
        return self._pair(other) + (-self)

    def __neg__(self):
        return FieldElem(self.field, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        other = self._pair(other)
        prod = (self._poly() * other._poly()) % self.field.modulus
        return FieldElem(self.field, prod.coeffs)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        if self.is_zero():
            raise ZeroDivisionError(f"division by zero in {self.field}")
        g, s, _ = poly_ext_gcd(self._poly(), self.field.modulus)
        if g.degree != 0:
            raise ArithmeticError(
                f"modulus of {self.field} is reducible (gcd {g.to_str()})")
        # g is monic, hence exactly 1, so s is already the inverse mod m.
        return FieldElem(self.field, (s % self.field.modulus).coeffs)

    def __truediv__(self, other):
        return self * self._pair(other).inverse()

    def __rtruediv__(self, other):
        return self._pair(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- identity ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.coeffs == self.field.coerce(other).coeffs
        if isinstance(other, FieldElem):
            try:
                return self.coeffs == self.field.coerce(other).coeffs
            except MixedBaseField:
                pass
            try:
                return other.field.coerce(self).coeffs == other.coeffs
            except MixedBaseField:
                return False
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.as_fraction())
        return hash((self.field.key, self.coeffs))

    def __repr__(self):
        return elem_to_str(self)


def elem_to_str(e) -> str:
    if isinstance(e, (int, Fraction)):
        return str(e)
    if not e.coeffs:
        return "0"
    return e._poly().to_str(_gen_symbol(e.field))


def _gen_symbol(field: NumberField) -> str:
    if field.kind == "cyclotomic":
        return f"z{field.key[1]}"
    if field.kind == "quadratic":
        return f"sqrt({field.key[1]})"
    if field.kind == "relative_quadratic":
        return "w"
    return "T"


# -- constructors -------------------------------------------------------------

QQ = NumberField(
    kind="rational",
    key=("rational",),
    scalar_ring=RAT,
    modulus=UniPoly(RAT, [0, 1]),
    label="Q",
)

_CYCLO_FIELDS: dict[int, NumberField] = {}
_QUAD_FIELDS: dict[int, NumberField] = {}


def cyclotomic_field(m: int) -> NumberField:
    if m < 1:
        raise ValueError("need m >= 1")
    if m in (1, 2):
        return QQ
    got = _CYCLO_FIELDS.get(m)
    if got is None:
        got = NumberField(
            kind="cyclotomic",
            key=("cyclotomic", m),
            scalar_ring=RAT,
            modulus=cyclotomic_poly(m),
            label=f"Q(zeta_{m})",
        )
        _CYCLO_FIELDS[m] = got
    return got


def quadratic_field(d) -> NumberField:
    """Q(sqrt(d)); d is silently replaced by its squarefree part, so
    quadratic_field(8) and quadratic_field(2) coincide."""
    d = squarefree_part(Fraction(d))
    if d == 0:
        raise ValueError("sqrt(0) does not generate an extension")
    d = int(d)
    if d == 1:
        return QQ
    got = _QUAD_FIELDS.get(d)
    if got is None:
        got = NumberField(
            kind="quadratic",
            key=("quadratic", d),
            scalar_ring=RAT,
            modulus=UniPoly(RAT, [-d, 0, 1]),
            label=f"Q(sqrt({d}))",
        )
        _QUAD_FIELDS[d] = got
    return got


def relative_quadratic_field(base: NumberField, f: UniPoly,
                             label: str = "") -> NumberField:
    """base[T]/(f) for a monic degree-2 f over the base field."""
    if f.degree != 2 or not f.is_monic():
        raise ValueError("modulus must be monic of degree 2")
    if f.ring.key != base.key:
        f = UniPoly(base, [base.coerce(c) for c in f.coeffs])
    if not label:
        label = f"{base}[w]/({f.to_str('w')})"
    return NumberField(
        kind="relative_quadratic",
        key=("relative_quadratic", base.key, f.coeffs),
        scalar_ring=base,
        modulus=f,
        base=base,
        label=label,
    )


# -- maps ---------------------------------------------------------------------

def galois_conj(e: FieldElem) -> FieldElem:
    """The canonical involution: identity on Q, complex conjugation on a
    cyclotomic field, sqrt(d) -> -sqrt(d) on a quadratic field, and the
    nontrivial relative automorphism on a relative quadratic extension."""
    k = e.field
    if k.kind == "rational":
        return e
    if k.kind == "cyclotomic":
        return cyclotomic_map(e, -1)
    if k.kind == "quadratic":
        cs = list(e.coeffs)
        if len(cs) == 2:
            cs[1] = -cs[1]
        return FieldElem(k, tuple(cs))
    # relative quadratic: roots of T^2 + f1*T + f0 sum to -f1, so the
    # conjugate of the generator w is (-f1) - w.
    f1 = k.modulus.coeff(1)
    c0 = e.coeffs[0] if e.coeffs else k.scalar_ring.zero()
    c1 = e.coeffs[1] if len(e.coeffs) > 1 else k.scalar_ring.zero()
    return FieldElem(k, (c0 + c1 * (-f1), -c1))


def cyclotomic_map(e: FieldElem, t: int) -> FieldElem:
    """The automorphism zeta -> zeta^t of a cyclotomic field (t coprime to
    the conductor); acts as the identity on Q."""
    k = e.field
    if k.kind == "rational":
        return e
    if k.kind != "cyclotomic":
        raise UnsupportedAction(f"{k} is not cyclotomic")
    m = k.key[1]
    t %= m
    if gcd(t, m) != 1:
        raise ValueError(f"map index {t} is not invertible mod {m}")
    z_t = k.gen() ** t
    acc = k.zero()
    for c in reversed(e.coeffs):
        acc = acc * z_t + c
    return acc


def norm_to_base(e: FieldElem):
    """e times its conjugate, landing in the base of a degree-2 layer
    (a Fraction over Q-level fields, a base FieldElem otherwise)."""
    k = e.field
    if k.kind == "rational":
        return e.as_fraction() ** 2
    if k.kind == "cyclotomic" and k.key[1] not in (3, 4, 6):
        raise UnsupportedAction(
            f"{k} has degree {k.degree_over_q()} over Q; norm-to-base is "
            "only provided for degree-2 layers")
    n = e * galois_conj(e)
    if k.kind == "relative_quadratic":
        if len(n.coeffs) > 1:
            raise ArithmeticError("norm failed to land in the base field")
        return n.coeffs[0] if n.coeffs else k.scalar_ring.zero()
    return n.as_fraction()


def trace_to_base(e: FieldElem):
    k = e.field
    if k.kind == "rational":
        return 2 * e.as_fraction()
    if k.kind == "cyclotomic" and k.key[1] not in (3, 4, 6):
        raise UnsupportedAction(
            f"{k} has degree {k.degree_over_q()} over Q; trace-to-base is "
            "only provided for degree-2 layers")
    t = e + galois_conj(e)
    if k.kind == "relative_quadratic":
        if len(t.coeffs) > 1:
            raise ArithmeticError("trace failed to land in the base field")
        return t.coeffs[0] if t.coeffs else k.scalar_ring.zero()
    return t.as_fraction()


def multiplicative_order(e: FieldElem, bound: int = 64) -> int:
    """Least n <= bound with e^n == 1."""
    if e.is_zero():
        raise NotFiniteOrder("zero has no multiplicative order")
    acc = e
    one = e.field.one()
    for n in range(1, bound + 1):
        if acc == one:
            return n
        acc = acc * e
    raise NotFiniteOrder(f"{e!r} has no multiplicative order <= {bound}")
