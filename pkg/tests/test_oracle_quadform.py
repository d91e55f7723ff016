"""The quaternary fixed-point oracle: form expansion, decisions, and the
concordance battery against the Hilbert-symbol verdict on (d, c)."""

import random
from dataclasses import dataclass
from fractions import Fraction

import pytest

from motquot.errors import Inconclusive
from motquot.exact import Matrix, quadratic_field
from motquot.ntheory import hilbert_symbol, relevant_places
from motquot.oracle import fixed_point_forms, quaternary_fixed_point_test
from motquot.oracle.quadform import form_value, is_zero_form


@dataclass
class Datum:
    """Stand-in for descent data: just the fields the oracle reads."""
    d: int
    m: Matrix

    @property
    def c(self) -> Fraction:
        prod = self.m * conj_matrix(self.m)
        return prod[0, 0].as_fraction()


def conj_matrix(m: Matrix):
    from motquot.exact import galois_conj
    return m.map_entries(galois_conj)


def antidiag(d: int, q: int, r: int) -> Datum:
    k = quadratic_field(d)
    return Datum(d, Matrix(k, [[0, q], [r, 0]]))


def test_expansion_matches_direct_evaluation():
    rng = random.Random(40100)
    for _ in range(60):
        d = rng.choice([-1, 2, 5, -3, 7])
        k = quadratic_field(d)
        root = k.gen()
        entries = [[k.coerce(rng.randint(-3, 3)) + root * rng.randint(-3, 3)
                    for _ in range(2)] for _ in range(2)]
        m = Matrix(k, entries)
        gram_a, gram_b = fixed_point_forms(Datum(d, m))
        vec = [rng.randint(-5, 5) for _ in range(4)]
        v1 = k.coerce(vec[0]) + root * vec[2]
        v2 = k.coerce(vec[1]) + root * vec[3]
        from motquot.exact import galois_conj
        w1 = m[0, 0] * galois_conj(v1) + m[0, 1] * galois_conj(v2)
        w2 = m[1, 0] * galois_conj(v1) + m[1, 1] * galois_conj(v2)
        f = v2 * w1 - v1 * w2
        expected = k.coerce(form_value(gram_a, vec)) + root * form_value(
            gram_b, vec)
        assert f == expected, (d, entries, vec)


def test_sqrt_part_vanishing_criterion():
    # expanding f shows the sqrt(d) part is zero exactly when the
    # off-diagonal entries are rational and m22 = -conj(m11)
    from motquot.exact import galois_conj
    rng = random.Random(40101)
    vanished = 0
    for trial in range(80):
        d = rng.choice([-1, 2, 5])
        k = quadratic_field(d)
        root = k.gen()
        if trial % 3 == 0:
            # bias towards the vanishing shape so both branches are hit
            m11 = k.coerce(rng.randint(-3, 3)) + root * rng.randint(-3, 3)
            m = Matrix(k, [[m11, rng.randint(-3, 3)],
                           [rng.randint(-3, 3), -galois_conj(m11)]])
        else:
            m = Matrix(k, [[k.coerce(rng.randint(-3, 3))
                            + root * rng.randint(-3, 3)
                            for _ in range(2)] for _ in range(2)])
        _, gram_b = fixed_point_forms(Datum(d, m))
        expected = (m[0, 1].is_rational() and m[1, 0].is_rational()
                    and m[1, 1] == -galois_conj(m[0, 0]))
        assert is_zero_form(gram_b) == expected
        vanished += is_zero_form(gram_b)
    assert 0 < vanished < 80


def test_positive_definite_form_has_no_fixed_point():
    # d = -1, M = [[0,1],[-1,0]] gives the form x1^2 + x2^2 + y1^2 + y2^2
    dd = antidiag(-1, 1, -1)
    gram_a, gram_b = fixed_point_forms(dd)
    assert is_zero_form(gram_b)
    assert form_value(gram_a, (1, 2, 3, 4)) == 1 + 4 + 9 + 16
    report = quaternary_fixed_point_test(dd)
    assert report.status == "no-solution"
    assert "definite" in report.reason


def test_swap_matrix_has_fixed_point():
    dd = Datum(-1, Matrix(quadratic_field(-1), [[0, 1], [1, 0]]))
    report = quaternary_fixed_point_test(dd)
    assert report.status == "solution"
    # (1,1,0,0), i.e. v = (1,1), is one witness; any nonzero common zero
    # of both forms certifies the fixed point
    gram_a, gram_b = fixed_point_forms(dd)
    assert form_value(gram_a, (1, 1, 0, 0)) == 0
    assert form_value(gram_a, report.vector) == 0
    assert form_value(gram_b, report.vector) == 0
    assert any(report.vector)


def test_rotation_over_sqrt2_has_fixed_point():
    dd = antidiag(2, 1, -1)
    report = quaternary_fixed_point_test(dd)
    assert report.status == "solution"
    x1, x2, y1, y2 = report.vector
    assert x1 * x1 + x2 * x2 == 2 * (y1 * y1 + y2 * y2)


def test_conjugation_fixes_real_points():
    dd = Datum(5, Matrix.identity(quadratic_field(5), 2))
    report = quaternary_fixed_point_test(dd)
    assert report.status == "solution"


def test_local_obstruction_path():
    # d=2, c=3: the symbol (2,3)_v is -1 at v = 2 and 3, and the form
    # x1^2 - 3 x2^2 - 2 y1^2 + 6 y2^2 is indefinite, so only the local
    # test can rule out solutions
    dd = antidiag(2, 3, 1)
    report = quaternary_fixed_point_test(dd)
    assert report.status == "no-solution"
    assert "no nontrivial zeros over Q_" in report.reason


def test_inconclusive_when_search_disabled():
    with pytest.raises(Inconclusive):
        quaternary_fixed_point_test(antidiag(2, 1, -1), search_bound=0)


def conic_splits(d: int, c) -> bool:
    c = Fraction(c)
    num = c.numerator * c.denominator
    return all(hilbert_symbol(d, num, v) == 1
               for v in relevant_places(d, num))


BATTERY = [
    antidiag(-1, -1, 1),    # negative definite, c = -1
    antidiag(-1, 1, -1),    # Example-style positive definite, c = -1
    antidiag(-1, 1, 1),     # c = 1, split
    Datum(-1, Matrix(quadratic_field(-1), [[0, 1], [1, 0]])),
    antidiag(2, 1, -1),     # c = -1, split at 2
    antidiag(2, 3, 1),      # c = 3, obstruction at 3
    antidiag(2, 1, 1),      # c = 1
    antidiag(5, 1, 1),      # c = 1
    antidiag(5, -1, 1),     # c = -5, split
    antidiag(5, 1, -1),     # c = -1, (5,-1) split
    antidiag(-2, 1, 1),     # c = 1
    antidiag(-2, -1, 1),    # c = -2: (-2,-2) ramifies
    antidiag(3, -1, 1),     # c = -1: (3,-1) ramifies at 3
    antidiag(3, 1, -3),     # c = -3, split
    Datum(5, Matrix.identity(quadratic_field(5), 2)),
]


def test_battery_is_large_enough():
    assert len(BATTERY) >= 12


def test_verdicts_agree_with_symbol_rule():
    """The gate for the descent rule: the geometric fixed-point oracle and
    the Hilbert-symbol verdict on (d, c) must agree on every datum."""
    for dd in BATTERY:
        report = quaternary_fixed_point_test(dd)
        expected = conic_splits(dd.d, dd.c)
        assert (report.status == "solution") == expected, (dd.d, dd.c, report)


def test_solutions_zero_both_forms():
    for dd in BATTERY:
        report = quaternary_fixed_point_test(dd)
        if report.status != "solution":
            continue
        gram_a, gram_b = fixed_point_forms(dd)
        assert form_value(gram_a, report.vector) == 0
        assert form_value(gram_b, report.vector) == 0
