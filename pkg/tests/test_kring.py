"""The expression ring: normal forms, rendering grammar, rewrites, the
L-killing realization, counting specializations, and base change."""

import random

import pytest

from motquot.errors import BadReduction, MixedBaseField, NotPulledBack
from motquot.exact import QQ, quadratic_field
from motquot.kring import (
    Atom,
    DerivationTrace,
    KExpr,
    SBExpr,
    SpecializationContext,
    conic_class,
    conic_split_over_q,
    etale_class,
    extend_scalars,
    normalize,
    restrict_scalars,
    sb_realize,
    specialize_count,
    specialize_count_prime_power,
    standard_class,
)

L = KExpr.lefschetz(QQ)
ONE = KExpr.scalar(QQ, 1)


# -- construction and rendering ---------------------------------------------------

def test_golden_rendering():
    conic = conic_class(QQ, -1, -1)
    expr = 1 + (L - 1) * conic
    assert expr.render() == "1*L*C(-1,-1) - 1*C(-1,-1) + 1"


def test_product_of_gm_and_p1():
    assert ((L - 1) * (1 + L)).render() == "1*L^2 - 1"
    assert (L - 1) * (1 + L) == L * L - 1


def test_formal_atom_square():
    e = etale_class(QQ, -1)
    assert (e * e).render() == "1*SpecQ(sqrt(-1))*SpecQ(sqrt(-1))"


def test_additive_identity_and_zero_render():
    x = 3 * L + conic_class(QQ, -1, -1)
    assert x + 0 == x
    assert (x - x).render() == "0"
    assert (x - x).is_zero()


def test_standard_classes():
    assert standard_class(QQ, "projective", 1).render() == "1*L + 1"
    assert standard_class(QQ, "gm").render() == "1*L - 1"
    assert standard_class(QQ, "affine", 2).render() == "1*L^2"
    assert standard_class(QQ, "point").render() == "1"
    assert standard_class(QQ, "projective", 0) == 1
    assert standard_class(QQ, "affine", 0) == 1
    with pytest.raises(ValueError):
        standard_class(QQ, "projective", -1)
    with pytest.raises(ValueError):
        standard_class(QQ, "elliptic")


def test_atom_factories_normalize_data():
    assert conic_class(QQ, 8, -4).atoms()[0].render() == "C(-1,2)"
    assert conic_class(QQ, -1, 2) == conic_class(QQ, 2, -1)
    assert etale_class(QQ, 4) == 2
    assert etale_class(QQ, 12).atoms()[0].render() == "SpecQ(sqrt(3))"
    with pytest.raises(ValueError):
        conic_class(QQ, 0, 3)
    with pytest.raises(ValueError):
        etale_class(QQ, 0)


def test_mixed_bases_rejected():
    k = quadratic_field(2)
    with pytest.raises(MixedBaseField):
        KExpr.scalar(QQ, 1) + KExpr.scalar(k, 1)
    with pytest.raises(MixedBaseField):
        KExpr.lefschetz(QQ) * KExpr.lefschetz(k)


def test_no_negative_powers():
    with pytest.raises(ValueError):
        KExpr.lefschetz(QQ, -1)
    with pytest.raises(ValueError):
        L ** -2


# -- randomized ring axioms --------------------------------------------------------

ATOM_POOL = [
    conic_class(QQ, -1, -1),
    conic_class(QQ, -1, 2),
    etale_class(QQ, -1),
    etale_class(QQ, 17),
]


def rand_expr(rng: random.Random) -> KExpr:
    expr = KExpr.scalar(QQ, 0)
    for _ in range(rng.randint(0, 3)):
        term = KExpr.scalar(QQ, rng.randint(-3, 3))
        term = term * KExpr.lefschetz(QQ, rng.randint(0, 3))
        for _ in range(rng.randint(0, 2)):
            term = term * rng.choice(ATOM_POOL)
        expr = expr + term
    return expr


def test_ring_axioms_on_random_expressions():
    rng = random.Random(50100)
    seen = 0
    while seen < 1000:
        x, y, z = rand_expr(rng), rand_expr(rng), rand_expr(rng)
        seen += 3
        assert (x + y) + z == x + (y + z)
        assert x + y == y + x
        assert (x * y) * z == x * (y * z)
        assert x * y == y * x
        assert x * (y + z) == x * y + x * z
        assert x + 0 == x
        assert x * 1 == x
        assert x * 0 == KExpr.scalar(QQ, 0)
        assert x - x == 0


# -- normalization ------------------------------------------------------------------

def test_normalize_split_conic():
    expr = (L - 1) * conic_class(QQ, -1, 1)
    out, trace = normalize(expr)
    assert out == L * L - 1
    assert len(trace.steps) == 1
    assert trace.steps[0].rule == "rewrite-split-conic"
    assert trace.steps[0].anchor == "claim-2.1"
    assert not trace.flags


def test_normalize_keeps_nonsplit_conic():
    expr = (L - 1) * conic_class(QQ, -1, -1)
    out, trace = normalize(expr)
    assert out == expr
    assert not trace.steps
    assert not trace.flags


def test_normalize_square_etale():
    raw = KExpr.of_atom(QQ, Atom("etale", (4,)))
    out, trace = normalize(raw)
    assert out == 2
    assert trace.steps[0].rule == "rewrite-square-etale"


def test_normalize_flags_unknown_solvability():
    expr = conic_class(QQ, -1, -1)
    out, trace = normalize(expr, facts=lambda a, b: None)
    assert out == expr
    assert trace.flags == ["solvability of C(-1,-1) over Q unknown"]


def test_normalize_idempotent():
    rng = random.Random(50101)
    pool = ATOM_POOL + [conic_class(QQ, -1, 1), conic_class(QQ, 2, -1)]
    for _ in range(100):
        expr = KExpr.scalar(QQ, 0)
        for _ in range(rng.randint(0, 3)):
            term = KExpr.scalar(QQ, rng.randint(-3, 3))
            term = term * KExpr.lefschetz(QQ, rng.randint(0, 2))
            for _ in range(rng.randint(0, 2)):
                term = term * rng.choice(pool)
            expr = expr + term
        once, _ = normalize(expr)
        twice, trace2 = normalize(once)
        assert once == twice
        assert not trace2.steps


def test_conic_split_over_q_examples():
    assert conic_split_over_q(-1, 1)
    assert conic_split_over_q(2, -1)
    assert not conic_split_over_q(-1, -1)


def test_trace_chaining():
    e1 = KExpr.of_atom(QQ, Atom("etale", (4,)))
    expr = e1 + conic_class(QQ, -1, 1)
    out, trace = normalize(expr)
    assert out == 2 + (1 + L)
    assert len(trace.steps) == 2
    trace.validate()
    lines = trace.format_steps()
    assert all("=>" in line for line in lines)
    bad = DerivationTrace()
    bad.add("a", "x", ONE, L)
    with pytest.raises(ValueError):
        bad.add("b", "y", ONE, L)


# -- the realization that kills L ---------------------------------------------------

def test_sb_examples():
    assert sb_realize(L * L).is_zero()
    assert sb_realize(1 + L) == SBExpr(QQ, {(): 1})
    conic = conic_class(QQ, -1, -1)
    catom = conic.atoms()[0]
    image = sb_realize(1 + (L - 1) * conic)
    assert image == SBExpr(QQ, {(): 1, (catom,): -1})
    assert image.render() == "-1*[C(-1,-1)] + 1"


def test_sb_is_ring_homomorphism():
    rng = random.Random(50102)
    for _ in range(200):
        x, y = rand_expr(rng), rand_expr(rng)
        assert sb_realize(x + y) == sb_realize(x) + sb_realize(y)
        assert sb_realize(x * y) == sb_realize(x) * sb_realize(y)
    assert sb_realize(L).is_zero()


# -- counting specializations --------------------------------------------------------

def test_specialize_examples():
    assert specialize_count(L * L, SpecializationContext(5)) == 25
    assert specialize_count(etale_class(QQ, -1),
                            SpecializationContext(5)) == 2
    assert specialize_count(etale_class(QQ, -1),
                            SpecializationContext(3)) == 0
    expr = 1 + (L - 1) * conic_class(QQ, -1, -1)
    assert specialize_count(expr, SpecializationContext(5)) == 25


def test_specialize_records_assumptions():
    ctx = SpecializationContext(5)
    specialize_count(conic_class(QQ, -1, -1), ctx)
    assert ctx.assumptions == ["p=5 is good for C(-1,-1)"]


def test_specialize_bad_reduction():
    with pytest.raises(BadReduction):
        specialize_count(etale_class(QQ, 5), SpecializationContext(5))
    with pytest.raises(BadReduction):
        specialize_count(conic_class(QQ, 3, 5), SpecializationContext(3))
    assert specialize_count(conic_class(QQ, 3, 5),
                            SpecializationContext(7)) == 8


def test_specialize_context_validation():
    with pytest.raises(ValueError):
        SpecializationContext(2)
    with pytest.raises(ValueError):
        SpecializationContext(9)


def test_specialize_prime_power():
    assert specialize_count_prime_power(L, 3, 2) == 9
    # (-1|3) = -1 but squares to 1 over F_9
    assert specialize_count_prime_power(etale_class(QQ, -1), 3, 2) == 2
    assert specialize_count_prime_power(etale_class(QQ, -1), 3, 1) == 0
    with pytest.raises(ValueError):
        specialize_count_prime_power(L, 4, 1)
    with pytest.raises(ValueError):
        specialize_count_prime_power(L, 3, 0)


def test_specialize_is_ring_homomorphism():
    rng = random.Random(50103)
    for p in (3, 5, 7, 13):
        ctx = SpecializationContext(p)
        for _ in range(60):
            x, y = rand_expr(rng), rand_expr(rng)
            sx, sy = specialize_count(x, ctx), specialize_count(y, ctx)
            assert specialize_count(x + y, ctx) == sx + sy
            assert specialize_count(x * y, ctx) == sx * sy


# -- base change -----------------------------------------------------------------------

GAUSS = quadratic_field(-1)


def test_extend_scalars_splits_the_example_conic():
    out = extend_scalars(conic_class(QQ, -1, -1), GAUSS)
    assert out == standard_class(GAUSS, "projective", 1)


def test_extend_scalars_on_etale_atoms():
    assert extend_scalars(etale_class(QQ, -1), GAUSS) == 2
    k2 = quadratic_field(2)
    persists = extend_scalars(etale_class(QQ, -1), k2)
    assert persists.atoms()[0].render() == "SpecQ(sqrt(-1))"
    assert extend_scalars(etale_class(QQ, 2), k2) == 2
    assert extend_scalars(etale_class(QQ, 8), k2) == 2


def test_extend_scalars_keeps_unsplit_conic():
    k2 = quadratic_field(2)
    out = extend_scalars(conic_class(QQ, -1, -1), k2)
    assert out.atoms() and out.atoms()[0].render() == "C(-1,-1)"


def test_extend_scalars_is_lefschetz_equivariant():
    out = extend_scalars(L, GAUSS)
    assert out == KExpr.lefschetz(GAUSS)


def test_restriction_follows_projection_formula():
    for x in (L, ONE, L * L + 1):
        back = restrict_scalars(extend_scalars(x, GAUSS), GAUSS)
        assert back == x * etale_class(QQ, -1)


def test_projection_formula_survives_multiplication_by_one():
    rng = random.Random(50104)
    k5 = quadratic_field(5)
    for _ in range(50):
        x = rand_expr(rng)
        pulled = extend_scalars(x, k5) * 1
        assert restrict_scalars(pulled, k5) == x * etale_class(QQ, 5)


def test_restrict_scalars_requires_marker():
    with pytest.raises(NotPulledBack):
        restrict_scalars(KExpr.lefschetz(GAUSS), GAUSS)


def test_extend_scalars_requires_rational_base():
    with pytest.raises(MixedBaseField):
        extend_scalars(KExpr.lefschetz(GAUSS), GAUSS)
    with pytest.raises(MixedBaseField):
        extend_scalars(L, QQ)
