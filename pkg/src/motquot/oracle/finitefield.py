"""Table-based finite field arithmetic for the counting oracles.

Elements of F_{p^m} are integers in [0, p^m): the base-p digits of the
integer are the coefficients of the element on the power basis of a fixed
irreducible modulus. Multiplication runs through discrete-log tables built
from a verified generator, so the multiplicative-group order is checked by
construction; the Frobenius x -> x^p is verified to be additive and
multiplicative before the field is handed out.

Everything here is self-contained integer arithmetic: none of the exact
characteristic-0 machinery is reused, which keeps this side of every
dual-route check independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from random import Random

from ..errors import TooLarge
from ..ntheory import factorize, is_prime, is_prime_power

FIELD_SIZE_LIMIT = 300_000
SPEC_MAX_Q = 81
SPEC_DEGREES = (1, 2, 4)


# -- F_p[T] helpers on plain coefficient lists (constant term first) ----------

def _ptrim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f

def _pmul(f: list[int], g: list[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _ptrim(out)

def _pmod(f: list[int], mod: list[int], p: int) -> list[int]:
    f = f[:]
    lead = mod[-1]
    inv_lead = pow(lead, -1, p)
    while len(f) >= len(mod):
        c = f[-1] * inv_lead % p
        if c:
            shift = len(f) - len(mod)
            for i, b in enumerate(mod):
                f[shift + i] = (f[shift + i] - c * b) % p
        f.pop()
    return _ptrim(f)

def _ppowmod(f: list[int], e: int, mod: list[int], p: int) -> list[int]:
    out = [1]
    base = _pmod(f, mod, p)
    while e:
        if e & 1:
            out = _pmod(_pmul(out, base, p), mod, p)
        base = _pmod(_pmul(base, base, p), mod, p)
        e >>= 1
    return out

def _pgcd(f: list[int], g: list[int], p: int) -> list[int]:
    f, g = f[:], g[:]
    while g:
        f, g = g, _pmod(f, g, p)
    return f

def _is_irreducible(f: list[int], p: int) -> bool:
    m = len(f) - 1
    if m < 1:
        return False
    t = [0, 1]
    if _ppowmod(t, p ** m, f, p) != _pmod(t, f, p):
        return False
    for r in factorize(m):
        w = _ppowmod(t, p ** (m // r), f, p)
        w = _ptrim([(a - b) % p for a, b in
                    zip(w + [0] * len(t), t + [0] * len(w))])
        if len(_pgcd(f, w, p)) != 1:
            return False
    return True

def find_irreducible(p: int, m: int) -> list[int]:
    """First monic irreducible of degree m over F_p in integer-code order."""
    if m == 1:
        return [0, 1]
    for code in range(1, p ** m):
        digits = []
        c = code
        for _ in range(m):
            digits.append(c % p)
            c //= p
        f = digits + [1]
        if _is_irreducible(f, p):
            return f
    raise ArithmeticError("no irreducible polynomial found")  # unreachable


class FiniteField:
    """F_{p^m} with add via digits and mul via discrete-log tables."""

    def __init__(self, p: int, m: int = 1, modulus: list[int] | None = None,
                 size_limit: int = FIELD_SIZE_LIMIT):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        size = p ** m
        if size > size_limit:
            raise TooLarge(
                f"field with {size} elements exceeds the table limit {size_limit}")
        if modulus is None:
            modulus = find_irreducible(p, m)
        if len(modulus) != m + 1 or modulus[-1] % p != 1:
            raise ValueError("modulus must be monic of the right degree")
        if m > 1 and not _is_irreducible([c % p for c in modulus], p):
            raise ValueError("modulus is reducible")
        self.p = p
        self.m = m
        self.size = size
        self.modulus = [c % p for c in modulus]
        self._digits = self._build_digit_table()
        self.generator, self._exp, self._log = self._build_log_tables()
        self._addt: list[list[int]] | None = None
        self._verify_frobenius()

    # -- construction helpers -------------------------------------------------

    def _build_digit_table(self) -> list[tuple[int, ...]]:
        p, m = self.p, self.m
        table = []
        for e in range(self.size):
            digits = []
            for _ in range(m):
                digits.append(e % p)
                e //= p
            table.append(tuple(digits))
        return table

    def _encode(self, digits) -> int:
        out = 0
        for c in reversed(list(digits)):
            out = out * self.p + c % self.p
        return out

    def _raw_mul(self, a: int, b: int) -> int:
        prod = _pmod(_pmul(list(self._digits[a]), list(self._digits[b]),
                           self.p), self.modulus, self.p)
        return self._encode(prod + [0] * (self.m - len(prod)))

    def _build_log_tables(self):
        n = self.size - 1
        prime_parts = [n // r for r in factorize(n)] if n > 1 else []
        for g in range(2, self.size):
            if all(self._raw_pow(g, k) != 1 for k in prime_parts):
                exp = [1] * n
                acc = 1
                for i in range(1, n):
                    acc = self._raw_mul(acc, g)
                    exp[i] = acc
                if len(set(exp)) != n:
                    raise ArithmeticError(
                        "generator powers do not exhaust the nonzero elements")
                log = [0] * self.size
                for i, v in enumerate(exp):
                    log[v] = i
                return g, exp, log
        if self.size == 2:
            return 1, [1], [0, 0]
        raise ArithmeticError("no multiplicative generator found")

    def _raw_pow(self, a: int, e: int) -> int:
        out = 1
        while e:
            if e & 1:
                out = self._raw_mul(out, a)
            a = self._raw_mul(a, a)
            e >>= 1
        return out

    def _verify_frobenius(self):
        pairs = []
        if self.size <= 50:
            pairs = [(x, y) for x in range(self.size)
                     for y in range(self.size)]
        else:
            rng = Random(171717)
            pairs = [(rng.randrange(self.size), rng.randrange(self.size))
                     for _ in range(2000)]
        for x, y in pairs:
            if self.pow(self.add(x, y), self.p) != self.add(
                    self.pow(x, self.p), self.pow(y, self.p)):
                raise ArithmeticError("Frobenius is not additive")
            if self.pow(self.mul(x, y), self.p) != self.mul(
                    self.pow(x, self.p), self.pow(y, self.p)):
                raise ArithmeticError("Frobenius is not multiplicative")

    # -- arithmetic ------------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        da, db = self._digits[a], self._digits[b]
        p = self.p
        out = 0
        for i in range(self.m - 1, -1, -1):
            out = out * p + (da[i] + db[i]) % p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        out = 0
        for c in reversed(self._digits[a]):
            out = out * p + (-c) % p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    ADD_TABLE_LIMIT = 1500

    def add_table(self) -> list[list[int]]:
        """Dense addition table for tight loops; small fields only."""
        if self._addt is None:
            if self.size > self.ADD_TABLE_LIMIT:
                raise TooLarge(
                    f"addition table for {self.size} elements not built")
            self._addt = [[self.add(a, b) for b in range(self.size)]
                          for a in range(self.size)]
        return self._addt

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        n = self.size - 1
        return self._exp[(self._log[a] + self._log[b]) % n]

    def inverse(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        n = self.size - 1
        return self._exp[(n - self._log[a]) % n]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 if e == 0 else 0
        n = self.size - 1
        return self._exp[(self._log[a] * e) % n]

    def from_int(self, n: int) -> int:
        return n % self.p

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.size - 1
        return n // gcd(n, self._log[a])

    def root_of_unity(self, order: int) -> int:
        """A fixed element of exact multiplicative order `order`."""
        n = self.size - 1
        if order < 1 or n % order:
            raise ValueError(f"no element of order {order} in F_{self.size}")
        return self.pow(self.generator, n // order)

    def square_root(self, a: int) -> int | None:
        if a == 0:
            return 0
        if self._log[a] % 2:
            return None
        r = self._exp[self._log[a] // 2]
        return min(r, self.neg(r))

    def in_subfield(self, a: int, degree: int) -> bool:
        """Whether a lies in the subfield F_{p^degree}."""
        return self.pow(a, self.p ** degree) == a

    def __repr__(self):
        return f"FiniteField({self.p}, {self.m})"


_FIELD_CACHE: dict[tuple[int, int], FiniteField] = {}


def get_field(p: int, m: int = 1) -> FiniteField:
    """Shared FiniteField instances (table construction is the slow part)."""
    key = (p, m)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = FiniteField(p, m)
    return _FIELD_CACHE[key]


@dataclass(frozen=True)
class FiniteFieldSpec:
    """A base-field choice for reporting: prime fields and degree-2/4
    extensions, capped at q = 81."""

    q: int

    def __post_init__(self):
        pf = is_prime_power(self.q)
        if pf is None:
            raise ValueError(f"{self.q} is not a prime power")
        p, m = pf
        if self.q > SPEC_MAX_Q:
            raise ValueError(f"q must be <= {SPEC_MAX_Q}")
        if m not in SPEC_DEGREES:
            raise ValueError(
                f"only prime fields and degree-{SPEC_DEGREES[1:]} extensions")

    @property
    def p(self) -> int:
        return is_prime_power(self.q)[0]

    @property
    def degree(self) -> int:
        return is_prime_power(self.q)[1]

    def build(self) -> FiniteField:
        return FiniteField(self.p, self.degree)
