"""Elementary number theory over Z and Q: factoring small integers,
Legendre symbols, p-adic square classes and Hilbert symbols.

Everything here is exact and deliberately small-scale: inputs are the
discriminants and conic coefficients that appear in quotient classes,
so trial division is plenty.
"""

from __future__ import annotations

from fractions import Fraction

INF = "inf"

Place = "int | str"  # a finite prime, or the marker INF


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| by trial division; ignores the sign."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("need n >= 1")
    out = 1
    for p, e in factorize(n).items():
        out *= (p - 1) * p ** (e - 1)
    return out


def divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        raise ValueError("0 has no divisor list")
    small, large = [], []
    f = 1
    while f * f <= n:
        if n % f == 0:
            small.append(f)
            if f != n // f:
                large.append(n // f)
        f += 1
    return small + large[::-1]


def is_prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, k) with n == p**k, or None.  n == 1 yields (1, 0)."""
    if n == 1:
        return (1, 0)
    fac = factorize(n)
    if len(fac) != 1:
        return None
    [(p, k)] = fac.items()
    return (p, k)


def squarefree_part(x: "int | Fraction") -> int:
    """The squarefree integer representing x modulo nonzero rational squares."""
    if isinstance(x, Fraction):
        if x == 0:
            return 0
        x = x.numerator * x.denominator
    if x == 0:
        return 0
    sign = -1 if x < 0 else 1
    out = sign
    for p, k in factorize(x).items():
        if k % 2:
            out *= p
    return out


def valuation(x: "int | Fraction", p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    if isinstance(x, Fraction):
        return valuation(x.numerator, p) - valuation(x.denominator, p)
    if x == 0:
        raise ValueError("valuation of 0")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) for odd prime p: 0, 1 or -1."""
    a %= p
    if a == 0:
        return 0
    s = pow(a, (p - 1) // 2, p)
    return 1 if s == 1 else -1


def is_square_in_qp(x: "int | Fraction", p: "int | str") -> bool:
    """Whether nonzero rational x is a square in Q_p (or in R for INF)."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("square class of 0")
    if p == INF:
        return x > 0
    v = valuation(x, p)
    if v % 2:
        return False
    u = x / Fraction(p) ** v
    if p == 2:
        # odd 2-adic unit square test: u = n/d with n*d odd; u square iff
        # n*d^-1 = n*d mod 8 is 1
        return (u.numerator * u.denominator) % 8 == 1
    return legendre((u.numerator * u.denominator) % p, p) == 1


def _odd_part(n: int) -> tuple[int, int]:
    """(valuation at 2, odd part) of a nonzero integer."""
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    return v, n


def hilbert_symbol(a: int, b: int, v: "int | str") -> int:
    """Hilbert symbol (a, b)_v for nonzero integers over Q_v.

    v is a prime or INF.  Classical closed formulas: sign rule at the real
    place, Legendre-symbol formula at odd p, and the epsilon/omega mod-8
    formula at 2.  An independent exhaustive check lives in oracle.hilbert.
    """
    if a == 0 or b == 0:
        raise ValueError("hilbert symbol needs nonzero entries")
    if v == INF:
        return -1 if (a < 0 and b < 0) else 1
    p = v
    if not is_prime(p):
        raise ValueError(f"not a place: {v!r}")
    if p == 2:
        alpha, u = _odd_part(a)
        beta, w = _odd_part(b)
        eps_u = ((u - 1) // 2) % 2
        eps_w = ((w - 1) // 2) % 2
        om_u = ((u * u - 1) // 8) % 2
        om_w = ((w * w - 1) // 8) % 2
        e = eps_u * eps_w + alpha * om_w + beta * om_u
        return -1 if e % 2 else 1
    alpha = valuation(a, p)
    beta = valuation(b, p)
    u = a // p**alpha
    w = b // p**beta
    s = 1
    if (alpha * beta * (p - 1) // 2) % 2:
        s = -s
    if beta % 2:
        s *= legendre(u % p, p)
    if alpha % 2:
        s *= legendre(w % p, p)
    return s


def relevant_places(a: int, b: int) -> list:
    """Places where (a, b)_v can be nontrivial: INF, 2 and odd p | ab."""
    ps = {2}
    for n in (a, b):
        ps.update(factorize(n))
    finite = sorted(ps)
    return finite + [INF]


def ramified_places(a: int, b: int) -> list:
    """Places with (a, b)_v == -1, finite primes ascending then INF."""
    return [v for v in relevant_places(a, b) if hilbert_symbol(a, b, v) == -1]


def place_splits_in_quadratic(e: int, v: "int | str") -> bool:
    """Whether the place v of Q splits in Q(sqrt(e)), e squarefree != 0, 1."""
    if e in (0, 1):
        raise ValueError("need a nontrivial squarefree e")
    if v == INF:
        return e > 0
    p = v
    if p == 2:
        return e % 2 != 0 and e % 8 == 1
    if e % p == 0:
        return False
    return legendre(e % p, p) == 1


def places_string(places: list) -> str:
    """Render a place list as used in obstruction reports: '2, inf'."""
    return ", ".join(str(v) for v in places)
