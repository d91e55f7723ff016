import random
from fractions import Fraction

import pytest

from motquot.errors import MixedBaseField, NotFiniteOrder
from motquot.exact.field import (
    QQ,
    cyclotomic_field,
    cyclotomic_map,
    elem_to_str,
    galois_conj,
    multiplicative_order,
    norm_to_base,
    quadratic_field,
    relative_quadratic_field,
    trace_to_base,
)
from motquot.exact.poly import UniPoly


def test_rational_field_is_degree_one():
    x = QQ.coerce(Fraction(3, 4))
    y = QQ.coerce(2)
    assert (x + y).as_fraction() == Fraction(11, 4)
    assert (x * y).as_fraction() == Fraction(3, 2)
    assert (x / y).as_fraction() == Fraction(3, 8)
    assert QQ.degree_over_q() == 1
    assert x.is_rational()


def test_cyclotomic_field_normalizes_trivial_orders():
    assert cyclotomic_field(1) is QQ
    assert cyclotomic_field(2) is QQ
    assert cyclotomic_field(4) is cyclotomic_field(4)


def test_gaussian_arithmetic():
    k = cyclotomic_field(4)
    i = k.gen()
    assert i * i == -1
    assert i ** 4 == 1
    assert (1 + i) * (1 - i) == 2
    assert (1 + i) / (1 - i) == i
    assert (i ** -1) == -i


def test_eisenstein_arithmetic():
    k = cyclotomic_field(3)
    z = k.gen()
    assert z * z + z + 1 == 0
    assert z ** 3 == 1
    assert (1 - z) * (1 - z * z) == 3


def test_quadratic_field_arithmetic():
    k = quadratic_field(5)
    s = k.gen()
    assert s * s == 5
    phi = (1 + s) / 2
    assert phi * phi == phi + 1  # golden ratio relation
    assert quadratic_field(8) is quadratic_field(2)
    assert quadratic_field(1) is QQ
    with pytest.raises(ValueError):
        quadratic_field(0)


def test_relative_quadratic_tower():
    k = cyclotomic_field(4)
    # w^2 = w + 1 over Q(zeta_4)
    f = UniPoly(k, [k.coerce(-1), k.coerce(-1), k.one()])
    kw = relative_quadratic_field(k, f)
    w = kw.gen()
    assert w * w == w + 1
    assert kw.degree_over_q() == 4
    i = kw.coerce(k.gen())
    assert i * i == -1
    inv = (w + i).inverse()
    assert (w + i) * inv == 1
    assert galois_conj(w) == 1 - w
    assert norm_to_base(w) == k.coerce(-1)
    assert trace_to_base(w) == k.one()


def test_mixed_field_arithmetic_rejected():
    a = cyclotomic_field(4).gen()
    b = cyclotomic_field(3).gen()
    with pytest.raises(MixedBaseField):
        a + b
    assert not (a == b)
    assert not (b == a)


def test_rationals_compare_across_fields():
    half = Fraction(1, 2)
    a = cyclotomic_field(4).coerce(half)
    b = QQ.coerce(half)
    assert a == b
    assert b == a
    assert a == half
    assert hash(a) == hash(b) == hash(half)


def test_unit_root_inventory():
    cases = [
        (QQ, 2),
        (quadratic_field(-1), 4),
        (quadratic_field(-3), 6),
        (quadratic_field(5), 2),
        (quadratic_field(-5), 2),
        (cyclotomic_field(4), 4),
        (cyclotomic_field(3), 6),
        (cyclotomic_field(5), 10),
        (cyclotomic_field(12), 12),
    ]
    for k, order in cases:
        assert k.unit_root_order() == order, f"{k}"
        g = k.unit_root_gen()
        assert multiplicative_order(g) == order, f"{k}"


def test_contains_nth_roots():
    assert QQ.contains_nth_roots(2)
    assert not QQ.contains_nth_roots(4)
    assert cyclotomic_field(4).contains_nth_roots(4)
    assert cyclotomic_field(3).contains_nth_roots(6)
    assert not cyclotomic_field(3).contains_nth_roots(4)
    assert quadratic_field(-3).contains_nth_roots(3)
    assert not quadratic_field(5).contains_nth_roots(5)


def test_galois_conj():
    k = cyclotomic_field(4)
    i = k.gen()
    assert galois_conj(i) == -i
    assert galois_conj(galois_conj(1 + 2 * i)) == 1 + 2 * i
    s = quadratic_field(7).gen()
    assert galois_conj(3 + s) == 3 - s
    assert norm_to_base(3 + s) == Fraction(2)
    assert trace_to_base(3 + s) == Fraction(6)
    assert galois_conj(QQ.coerce(5)) == 5


def test_cyclotomic_map_is_hom():
    k = cyclotomic_field(12)
    z = k.gen()
    rng = random.Random(7)
    for _ in range(40):
        a = k.from_coeffs([rng.randrange(-3, 4) for _ in range(4)])
        b = k.from_coeffs([rng.randrange(-3, 4) for _ in range(4)])
        t = rng.choice([1, 5, 7, 11])
        assert cyclotomic_map(a * b, t) == cyclotomic_map(a, t) * cyclotomic_map(b, t)
        assert cyclotomic_map(a + b, t) == cyclotomic_map(a, t) + cyclotomic_map(b, t)
    assert cyclotomic_map(z, 5) == z ** 5
    with pytest.raises(ValueError):
        cyclotomic_map(z, 4)


def test_multiplicative_order_failure():
    with pytest.raises(NotFiniteOrder):
        multiplicative_order(QQ.coerce(2))
    with pytest.raises(NotFiniteOrder):
        multiplicative_order(QQ.zero())


def test_elem_to_str():
    k = cyclotomic_field(4)
    assert elem_to_str(k.coerce(Fraction(1, 2)) + 3 * k.gen()) == "3*z4 + 1/2"
    assert elem_to_str(k.zero()) == "0"
    assert elem_to_str(quadratic_field(5).gen()) == "1*sqrt(5)"


def rand_elem(rng, k):
    n = k.modulus.degree
    return k.from_coeffs(
        [Fraction(rng.randrange(-5, 6), rng.randrange(1, 4)) for _ in range(n)])


def test_field_ring_axioms_battery():
    rng = random.Random(99)
    fields = [QQ, cyclotomic_field(4), cyclotomic_field(3),
              cyclotomic_field(12), quadratic_field(-1), quadratic_field(5)]
    checked = 0
    while checked < 1000:
        k = rng.choice(fields)
        a, b, c = (rand_elem(rng, k) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a * b == b * a
        if not a.is_zero():
            assert a * a.inverse() == 1
            assert (a ** -2) * a * a == 1
        checked += 1
