"""Fixed points of an antiholomorphic involution on the projective line,
decided through explicit quadratic forms.

Given descent data (d, M, c) with K = Q(sqrt(d)) and the semilinear map
sigma(v) = M * conj(v) on K^2, a point [v] of P^1_K is fixed by sigma exactly
when v and M * conj(v) are proportional, i.e. when

    f(v) = det( v | M * conj(v) ) = 0.

Writing v = x + sqrt(d) y with rational coordinate vectors x, y turns f into
A(x, y) + sqrt(d) * B(x, y) for two rational quadratic forms A, B in the four
variables (x1, x2, y1, y2).  Fixed rational points correspond to common
nontrivial rational zeros of A and B.  This module derives A and B from M by
direct expansion and decides solvability by definiteness, bounded search and
local solvability, independently of any symbol rule about the pair (d, c).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from ..errors import Inconclusive, UnsupportedAction
from ..exact import RAT, FieldElem, Matrix, quadratic_field
from ..ntheory import (
    INF,
    factorize,
    hilbert_symbol,
    is_square_in_qp,
    squarefree_part,
)

N_VARS = 4


def _elem_parts(e: FieldElem) -> tuple[Fraction, Fraction]:
    """(rational part, sqrt(d) part) of an element of Q(sqrt(d))."""
    c = list(e.coeffs) + [Fraction(0)] * 2
    return c[0], c[1]


def fixed_point_forms(dd) -> tuple[list[list[Fraction]], list[list[Fraction]]]:
    """The symmetric Gram matrices of A and B in variables (x1, x2, y1, y2).

    `dd` needs attributes d (squarefree non-square int), m (2x2 matrix over
    Q(sqrt(d))).  The expansion is purely formal: conj(v) = x - sqrt(d) y,
    f(v) = v2 * (M conj(v))1 - v1 * (M conj(v))2, the determinant of the
    pair (M conj(v), v); fixed points of v -> M conj(v) on the projective
    line are exactly the zeros of f.
    """
    field = quadratic_field(dd.d)
    if field.degree_over_q() != 2:
        raise UnsupportedAction("descent field must be a quadratic field")
    root = field.gen()
    m = dd.m
    # linear forms over K in the four rational variables
    v1 = [field.one(), field.zero(), root, field.zero()]
    v2 = [field.zero(), field.one(), field.zero(), root]
    vbar1 = [field.one(), field.zero(), -root, field.zero()]
    vbar2 = [field.zero(), field.one(), field.zero(), -root]
    mv1 = [m[0, 0] * vbar1[j] + m[0, 1] * vbar2[j] for j in range(N_VARS)]
    mv2 = [m[1, 0] * vbar1[j] + m[1, 1] * vbar2[j] for j in range(N_VARS)]
    # f = v2 * mv1 - v1 * mv2 as a K-valued quadratic form
    gram_a = [[Fraction(0)] * N_VARS for _ in range(N_VARS)]
    gram_b = [[Fraction(0)] * N_VARS for _ in range(N_VARS)]
    for i in range(N_VARS):
        for j in range(N_VARS):
            coeff = v2[i] * mv1[j] - v1[i] * mv2[j]
            ra, rb = _elem_parts(coeff)
            # symmetrize: Gram[i][j] collects half the z_i z_j coefficient
            gram_a[i][j] += ra / 2
            gram_a[j][i] += ra / 2
            gram_b[i][j] += rb / 2
            gram_b[j][i] += rb / 2
    return gram_a, gram_b


def form_value(gram: list[list[Fraction]], vec) -> Fraction:
    n = len(gram)
    return sum(gram[i][j] * vec[i] * vec[j]
               for i in range(n) for j in range(n))


def is_zero_form(gram) -> bool:
    return all(x == 0 for row in gram for x in row)


def _definiteness(gram) -> int:
    """+1 positive definite, -1 negative definite, 0 neither (Sylvester)."""
    n = len(gram)
    minors = []
    for k in range(1, n + 1):
        sub = Matrix(RAT, [row[:k] for row in gram[:k]])
        minors.append(sub.det())
    if all(m > 0 for m in minors):
        return 1
    # for -Q positive definite the order-k minor picks up a factor (-1)^k
    if all((m < 0 if k % 2 == 0 else m > 0)
           for k, m in enumerate(minors)):
        return -1
    return 0


def diagonalize_form(gram) -> list[Fraction]:
    """Diagonal entries of a congruent diagonal form (rank-many nonzero).

    Symmetric Gaussian elimination: clear row/column k with the pivot
    gram[k][k], swapping in a nonzero diagonal or mixing rows to create one.
    """
    g = [row[:] for row in gram]
    n = len(g)
    diag = []
    for k in range(n):
        if g[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if g[i][i] != 0), None)
            if pivot is not None:
                g[k], g[pivot] = g[pivot], g[k]
                for row in g:
                    row[k], row[pivot] = row[pivot], row[k]
            else:
                off = next((i for i in range(k + 1, n) if g[k][i] != 0), None)
                if off is None:
                    diag.append(Fraction(0))
                    continue
                # row/col addition makes the diagonal entry 2*g[k][off] != 0
                for j in range(n):
                    g[k][j] += g[off][j]
                for i in range(n):
                    g[i][k] += g[i][off]
        p = g[k][k]
        for i in range(k + 1, n):
            if g[i][k] != 0:
                t = g[i][k] / p
                for j in range(n):
                    g[i][j] -= t * g[k][j]
                for j in range(n):
                    g[j][i] -= t * g[j][k]
        diag.append(p)
    return [x for x in diag if x != 0]


def _square_class(x: Fraction) -> int:
    return int(squarefree_part(x))


def local_obstruction(gram) -> int | str | None:
    """A place of Q where the (nondegenerate quaternary) form has no
    nontrivial zero, or None.  Rank != 4 never obstructs (the radical
    provides zeros)."""
    diag = diagonalize_form(gram)
    if len(diag) != N_VARS:
        return None
    entries = [_square_class(x) for x in diag]
    if all(x > 0 for x in entries):
        return INF
    if all(x < 0 for x in entries):
        return INF
    disc = 1
    for x in entries:
        disc *= x
    primes = {2}
    for x in entries:
        primes.update(factorize(abs(x)))
    for p in sorted(primes):
        # a nondegenerate quaternary form over Q_p is anisotropic exactly
        # when its discriminant is a square and its Hasse invariant is
        # -(-1,-1)_p
        if not is_square_in_qp(Fraction(disc), p):
            continue
        hasse = 1
        for i, j in combinations(range(N_VARS), 2):
            hasse *= hilbert_symbol(entries[i], entries[j], p)
        if hasse == -hilbert_symbol(-1, -1, p):
            return p
    return None


def _primitive(vec: tuple[int, ...]) -> tuple[int, ...]:
    g = 0
    for x in vec:
        g = gcd(g, x)
    return tuple(x // g for x in vec) if g else vec


def _int_shells(bound: int):
    """Nonzero integer 4-vectors grouped by height, height ascending; each
    vector with max(|coord|) = h appears exactly once in shell h."""
    for h in range(1, bound + 1):
        span = range(-h, h + 1)
        edge = (-h, h)
        for a in edge:
            for b in span:
                for c in span:
                    for d in span:
                        yield (a, b, c, d)
        for b in edge:
            for a in range(-h + 1, h):
                for c in span:
                    for d in span:
                        yield (a, b, c, d)
        for c in edge:
            for a in range(-h + 1, h):
                for b in range(-h + 1, h):
                    for d in span:
                        yield (a, b, c, d)
        for d in edge:
            for a in range(-h + 1, h):
                for b in range(-h + 1, h):
                    for c in range(-h + 1, h):
                        yield (a, b, c, d)


@dataclass
class FixedPointReport:
    status: str                              # "solution" | "no-solution"
    vector: tuple[int, int, int, int] | None
    reason: str


def quaternary_fixed_point_test(dd, search_bound: int = 1000,
                                search_cap: int = 2_000_000) -> FixedPointReport:
    """Decide whether sigma(v) = M conj(v) fixes a rational point of P^1.

    The decision ladder: vanishing / definiteness of A and B (and of two
    pencil combinations), kernel vectors, a local obstruction for a single
    surviving form, then an ascending height search up to `search_bound`
    (truncated after `search_cap` candidates).  When none of these fires,
    Inconclusive is raised rather than guessed away.
    """
    gram_a, gram_b = fixed_point_forms(dd)
    if is_zero_form(gram_a) and is_zero_form(gram_b):
        return FixedPointReport("solution", (1, 0, 0, 0),
                                "fixed-point form vanishes identically")
    candidates = []
    if not is_zero_form(gram_a):
        candidates.append(("A", gram_a))
    if not is_zero_form(gram_b):
        candidates.append(("B", gram_b))
    if len(candidates) == 2:
        plus = [[gram_a[i][j] + gram_b[i][j] for j in range(N_VARS)]
                for i in range(N_VARS)]
        minus = [[gram_a[i][j] - gram_b[i][j] for j in range(N_VARS)]
                 for i in range(N_VARS)]
        candidates += [("A+B", plus), ("A-B", minus)]
    for name, gram in candidates:
        sign = _definiteness(gram)
        if sign != 0:
            word = "positive" if sign > 0 else "negative"
            return FixedPointReport(
                "no-solution", None, f"form {name} is {word} definite")
    forms = [gram for _, gram in candidates[:2]]

    def common_zero(vec) -> bool:
        return all(form_value(g, vec) == 0 for g in forms)

    # kernel vectors zero a degenerate form for free; check the other form
    for _, gram in candidates[:2]:
        mat = Matrix(RAT, gram)
        for kv in mat.nullspace():
            denom = 1
            for x in kv:
                denom = denom * x.denominator // gcd(denom, x.denominator)
            ivec = _primitive(tuple(int(x * denom) for x in kv))
            if common_zero(ivec):
                return FixedPointReport("solution", ivec,
                                        "radical vector of a degenerate form")
    if len(forms) == 1:
        place = local_obstruction(forms[0])
        if place is not None:
            where = "R" if place == INF else f"Q_{place}"
            return FixedPointReport(
                "no-solution", None, f"form has no nontrivial zeros over {where}")
    seen = 0
    for vec in _int_shells(search_bound):
        if common_zero(vec):
            return FixedPointReport("solution", _primitive(vec),
                                    "point found by height search")
        seen += 1
        if seen >= search_cap:
            break
    raise Inconclusive(
        "no definiteness, no local obstruction, and no point within "
        f"height {search_bound} (scanned {seen} candidates)")
