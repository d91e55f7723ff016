"""Factoring divisors of T^N - 1 over the supported number fields.

This is deliberately not a general factoring engine. Every polynomial that
reaches it annihilates a finite-order matrix, so its roots are roots of
unity; factoring reduces to cyclotomic bookkeeping. A divisor of T^N - 1
is split as a product of gcds with the cyclotomic polynomials Phi_d, and
each such piece is then split over the field k by grouping the primitive
d-th roots of unity into Galois orbits over k. Orbits are computed inside
one cyclotomic field Q(zeta_L) large enough to hold both k and zeta_d;
for a quadratic field the embedding of sqrt(e) into Q(zeta_L) is built
from Gauss sums. Orbit-product coefficients are Galois-fixed, hence lie
in the embedded copy of k, and are pulled back by solving a small linear
system over Q.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from ..errors import UnsupportedAction, UnsupportedDegree
from ..ntheory import euler_phi, legendre
from .field import QQ, FieldElem, NumberField, cyclotomic_field, cyclotomic_map
from .matrix import Matrix
from .poly import RAT, UniPoly, cyclotomic_poly, order_of_t_mod, poly_gcd


def poly_over_field(p: UniPoly, k: NumberField) -> UniPoly:
    """Reinterpret a polynomial with rational (or base-field) coefficients
    as a polynomial over k."""
    if p.ring.key == k.key:
        return p
    return UniPoly(k, [k.coerce(c) for c in p.coeffs])


def embedding_modulus(k: NumberField) -> int:
    """The least M with k inside Q(zeta_M)."""
    if k.kind == "rational":
        return 1
    if k.kind == "cyclotomic":
        return k.key[1]
    if k.kind == "quadratic":
        e = k.key[1]
        return abs(e) if e % 4 == 1 else 4 * abs(e)
    raise UnsupportedAction(
        f"{k} does not embed into a cyclotomic field in this package")


def embed_generator(k: NumberField, big: NumberField) -> FieldElem:
    """The image of k's generator inside the cyclotomic field ``big``
    (whose conductor must be divisible by embedding_modulus(k))."""
    L = big.key[1]
    if k.kind == "cyclotomic":
        m = k.key[1]
        if L % m != 0:
            raise ValueError(f"{big} does not contain {k}")
        return big.gen() ** (L // m)
    if k.kind != "quadratic":
        raise UnsupportedAction(f"no embedding rule for {k}")
    e = k.key[1]
    if L % embedding_modulus(k) != 0:
        raise ValueError(f"{big} does not contain {k}")
    z = big.gen()
    img = big.one()
    rest = abs(e)
    if rest % 2 == 0:
        # sqrt(2) = zeta_8 + zeta_8^-1
        z8 = z ** (L // 8)
        img = img * (z8 + z8 ** 7)
        rest //= 2
    p = 3
    while rest > 1:
        if rest % p == 0:
            zp = z ** (L // p)
            gauss = big.zero()
            for a in range(1, p):
                gauss = gauss + legendre(a, p) * zp ** a
            img = img * gauss
            rest //= p
        p += 2
    sq = img * img
    if sq == -e:
        img = img * z ** (L // 4)
        sq = img * img
    if sq != e:
        raise ArithmeticError(f"embedding of sqrt({e}) into {big} failed")
    return img


def galois_stabilizer(k: NumberField, big: NumberField,
                      emb: FieldElem) -> list[int]:
    """Residues t mod the conductor of ``big`` whose automorphism
    zeta -> zeta^t fixes the embedded copy of k pointwise."""
    L = big.key[1]
    fixed = [t for t in range(1, L)
             if gcd(t, L) == 1 and cyclotomic_map(emb, t) == emb]
    if len(fixed) * k.degree_over_q() != euler_phi(L):
        raise ArithmeticError(
            f"stabilizer of {k} in Gal(Q(zeta_{L})/Q) has wrong size")
    return fixed


def _pull_back(c: FieldElem, k: NumberField, emb: FieldElem,
               big: NumberField) -> FieldElem:
    """Rewrite a Galois-fixed element of the big cyclotomic field in the
    power basis of the embedded copy of k."""
    n_big = big.degree_over_q()
    deg = k.degree_over_q()
    powers = [big.one()]
    for _ in range(deg - 1):
        powers.append(powers[-1] * emb)

    def vec(x: FieldElem) -> list[Fraction]:
        cs = list(x.coeffs)
        return [cs[i] if i < len(cs) else Fraction(0) for i in range(n_big)]

    cols = [vec(p) for p in powers]
    m = Matrix(RAT, [[cols[j][i] for j in range(deg)] for i in range(n_big)])
    sol = m.solve(vec(c))
    if sol is None:
        raise ArithmeticError(f"{c!r} does not lie in the embedded {k}")
    return k.from_coeffs(sol)


def _split_cyclotomic_piece(g: UniPoly, d: int, k: NumberField) -> list[UniPoly]:
    """Split a divisor g of Phi_d into irreducible factors over k."""
    if g.degree <= 1:
        return [g] if g.degree == 1 else []
    if k.kind == "rational":
        # Phi_d is irreducible over Q, so g can only be all of it.
        if g.degree > 2:
            raise UnsupportedDegree(
                f"Phi_{d} is irreducible of degree {g.degree} over Q")
        return [g]
    if k.kind == "relative_quadratic":
        raise UnsupportedAction(
            "factoring over a relative quadratic extension is not supported")

    L = lcm(d, embedding_modulus(k))
    big = cyclotomic_field(max(L, 3))
    L = big.key[1]
    emb = embed_generator(k, big)
    stab = galois_stabilizer(k, big, emb)
    zd = big.gen() ** (L // d)

    residues = [j for j in range(1, d + 1) if gcd(j, d) == 1]
    seen: set[int] = set()
    factors = []
    remaining = g
    for j in residues:
        if j in seen:
            continue
        orbit = sorted({(j * t) % d for t in stab})
        seen.update(orbit)
        if len(orbit) > 2:
            raise UnsupportedDegree(
                f"a factor of Phi_{d} has degree {len(orbit)} over {k}")
        f_big = UniPoly(big, [big.one()])
        for jj in orbit:
            f_big = f_big * UniPoly(big, [-(zd ** jj), big.one()])
        f_k = UniPoly(k, [_pull_back(c, k, emb, big) for c in f_big.coeffs])
        q, r = remaining.divmod(f_k)
        if r.is_zero():
            factors.append(f_k)
            remaining = q
            if remaining.degree == 0:
                break
    if remaining.degree != 0:
        raise ArithmeticError(
            f"orbit factors do not exhaust {g.to_str()} over {k}")
    return factors


def factor_unity_poly(p: UniPoly, k: NumberField,
                      bound: int = 64) -> list[tuple[UniPoly, int]]:
    """Complete factorization over k of a monic divisor of some T^N - 1.

    Returns (factor, multiplicity) pairs; since divisors of T^N - 1 are
    squarefree in characteristic 0, every multiplicity is 1. Factors are
    listed by ascending root order d, then in orbit-enumeration order.
    Raises OrderBoundExceeded when p divides no T^N - 1 with N <= bound,
    and UnsupportedDegree when a factor of degree > 2 over k appears.
    """
    p = poly_over_field(p, k).monic()
    if p.degree <= 0:
        return []
    n = order_of_t_mod(p, bound)
    out: list[tuple[UniPoly, int]] = []
    remaining = p
    for d in range(1, n + 1):
        if n % d != 0:
            continue
        phi_d = poly_over_field(cyclotomic_poly(d), k)
        g = poly_gcd(remaining, phi_d)
        if g.degree <= 0:
            continue
        for f in _split_cyclotomic_piece(g, d, k):
            out.append((f, 1))
        remaining = remaining // g
    if remaining.degree != 0:
        raise ArithmeticError(
            f"cyclotomic pieces do not exhaust {p.to_str()}")
    return out


def linear_roots(p: UniPoly, k: NumberField,
                 bound: int = 64) -> list[FieldElem] | None:
    """All roots of p in k when p splits into linear factors there,
    otherwise None. Roots are roots of unity by the contract of
    factor_unity_poly."""
    try:
        factors = factor_unity_poly(p, k, bound)
    except UnsupportedDegree:
        return None
    roots = []
    for f, _ in factors:
        if f.degree != 1:
            return None
        roots.append(-f.coeff(0))
    return roots
