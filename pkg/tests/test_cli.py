"""Command line: problem parsing, expression parsing, dispatch, rendering,
and exit codes."""

import json

import pytest

from motquot.cli import (
    ProblemSpec,
    ResultDocument,
    dispatch,
    main,
    parse_entry,
    parse_kexpr,
    parse_problem,
    render,
    select_route,
    serialize_problem,
)
from motquot.errors import ParseError, ValidationError
from motquot.exact import QQ, cyclotomic_field, quadratic_field
from motquot.kring import DerivationTrace, KExpr, conic_class, etale_class
from motquot.quotient import InequalityCertificate

ROT4 = {"field": "rational", "orders": [4],
        "generators": [[["0", "-1"], ["1", "0"]]]}
DIAG4 = {"field": "cyclotomic 4", "orders": [4],
         "generators": [[["z", "0"], ["0", "-1"]]]}
EX12 = {"field": "rational",
        "descent": {"d": -1, "matrix": [["0", "1"], ["-1", "0"]]}}
SIGN2 = {"field": "rational", "orders": [2],
         "generators": [[["-1", "0"], ["0", "-1"]]]}


def L(e=1):
    return KExpr.lefschetz(QQ, e)


def write(tmp_path, data, name="problem.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


# -- entries ---------------------------------------------------------------------

def test_entry_arithmetic():
    k4 = cyclotomic_field(4)
    z = k4.gen()
    assert parse_entry("-1", QQ) == QQ.coerce(-1)
    assert parse_entry("3/2", QQ) == QQ.coerce(3) / 2
    assert parse_entry("z", k4) == z
    assert parse_entry("2*z4 + 1", k4) == 2 * z + 1
    assert parse_entry("z^2", k4) == z * z
    assert parse_entry("1 - z", k4) == 1 - z
    k5 = quadratic_field(5)
    assert parse_entry("sqrt(5)", k5) == k5.gen()
    assert parse_entry("1/2*s - 3", k5) == k5.gen() / 2 - 3


def test_entry_rejects_malformed():
    k4 = cyclotomic_field(4)
    for bad in ("1/+2", "", "2*", "z3", "q", "1//2", "2**z", "--1"):
        with pytest.raises(ParseError):
            parse_entry(bad, k4)
    with pytest.raises(ParseError):
        parse_entry("z", QQ)
    with pytest.raises(ParseError):
        parse_entry("sqrt(2)", quadratic_field(5))


# -- problem files ------------------------------------------------------------------

def test_parse_example_problems():
    rot = parse_problem(json.dumps(ROT4))
    assert rot.orders == (4,) and rot.field is QQ
    assert rot.action().dim == 2
    diag = parse_problem(json.dumps(DIAG4))
    assert diag.field is cyclotomic_field(4)
    ex = parse_problem(json.dumps(EX12))
    assert ex.descent().c == -1


def test_parse_rejects_bad_files():
    with pytest.raises(ParseError) as info:
        parse_problem("{\n  \"field\": oops\n}")
    assert info.value.line == 2
    cases = [
        {"field": "septic 7", "orders": [], "generators": []},
        {"orders": [2]},                                   # count mismatch
        {"orders": [2], "generators": [[["1", "0"]]]},     # not square
        {"orders": [0], "generators": [[["1"]]]},
        {"task": "solve", **ROT4},
        {"extra": 1, **ROT4},
        {**ROT4, "descent": EX12["descent"]},              # both kinds
        {"field": "rational"},                             # neither kind
        {"field": "rational", "descent": {"d": 4,
                                          "matrix": [["0", "1"], ["1", "0"]]}},
    ]
    for data in cases:
        with pytest.raises(ParseError):
            parse_problem(json.dumps(data))


def test_declared_c_is_cross_checked():
    good = {"field": "rational",
            "descent": {**EX12["descent"], "c": "-1"}}
    assert parse_problem(json.dumps(good)).descent_d == -1
    bad = {"field": "rational",
           "descent": {**EX12["descent"], "c": "1"}}
    with pytest.raises(ValidationError):
        parse_problem(json.dumps(bad))


def test_problem_round_trip():
    for data in (ROT4, DIAG4, EX12, SIGN2):
        spec = parse_problem(json.dumps(data))
        again = parse_problem(serialize_problem(spec))
        assert again == spec
        assert serialize_problem(again) == serialize_problem(spec)


# -- canonical expressions -------------------------------------------------------------

def expression_corpus():
    return [
        KExpr.scalar(QQ, 0),
        KExpr.scalar(QQ, 2),
        L(2),
        L(2) - 1,
        1 + (L() - 1) * conic_class(QQ, -1, -1),
        (L() - 1) * etale_class(QQ, -3) + 7,
        L(3) + 2 * L() * conic_class(QQ, -1, -1) - 5,
    ]


def test_canonical_expressions_reparse():
    for expr in expression_corpus():
        assert parse_kexpr(expr.render()) == expr


def test_bare_expression_forms():
    assert parse_kexpr("L^2") == L(2)
    assert parse_kexpr("L") == L()
    assert parse_kexpr("-1*L + 1") == 1 - L()
    assert parse_kexpr("C(-1,-1)") == conic_class(QQ, -1, -1)


def test_expression_parse_errors():
    for bad in ("", "L^", "1**2", "Q(x)", "2*2", "1 + - 1", "L^2 2"):
        with pytest.raises(ParseError):
            parse_kexpr(bad)


# -- dispatch ---------------------------------------------------------------------------

def test_route_selection():
    assert select_route(parse_problem(json.dumps(ROT4))) == "prime-power"
    assert select_route(parse_problem(json.dumps(DIAG4))) == "split"
    assert select_route(parse_problem(json.dumps(EX12))) == "descent"
    assert select_route(parse_problem(json.dumps(SIGN2))) == "split"
    sixth = {"field": "rational", "orders": [6],
             "generators": [[["0", "-1"], ["1", "1"]]]}
    assert select_route(parse_problem(json.dumps(sixth))) == "direct"


def test_dispatch_results_reparse_to_the_same_normal_form():
    for data in (ROT4, DIAG4, EX12, SIGN2):
        spec = parse_problem(json.dumps(data))
        doc = dispatch(spec)
        base = spec.field if data is DIAG4 else QQ
        assert parse_kexpr(doc.expression.render(), base) == doc.expression


def test_dispatch_order_six_direct_route():
    sixth = {"field": "rational", "orders": [6],
             "generators": [[["0", "-1"], ["1", "1"]]]}
    doc = dispatch(parse_problem(json.dumps(sixth)))
    assert doc.expression == L(2)


def test_dispatch_certificates():
    spec = parse_problem(json.dumps(EX12))
    doc = dispatch(spec, certify_not=parse_kexpr("L^2"))
    assert isinstance(doc.certificate, InequalityCertificate)
    assert doc.exit_status == 0
    same = dispatch(spec, certify_not=dispatch(spec).expression)
    assert same.certificate == "equal" and same.exit_status == 0
    other = parse_kexpr("1*L*C(-1,-3) - 1*C(-1,-3) + 1")
    unknown = dispatch(spec, certify_not=other)
    assert unknown.certificate == "unknown" and unknown.exit_status == 2


def test_dispatch_count_checks():
    spec = parse_problem(json.dumps(ROT4))
    doc = dispatch(spec, check_counts=(3, 5))
    assert [r.match for r in doc.counts] == [True, True]
    assert doc.exit_status == 0


# -- rendering -----------------------------------------------------------------------

def test_render_golden_canonical():
    doc = dispatch(parse_problem(json.dumps(ROT4)))
    assert render(doc, "canonical") == "1*L^2\n"


def test_render_golden_text():
    doc = dispatch(parse_problem(json.dumps(EX12)))
    text = render(doc, include_trace=True)
    lines = text.splitlines()
    assert lines[0] == "route: descent"
    assert lines[1] == "class: 1*L*C(-1,-1) - 1*C(-1,-1) + 1"
    assert lines[2] == "trace:"
    assert lines[3].startswith("  step 1: descended-conic [claim-3.1]: ")
    assert " => " in lines[3]


def test_render_empty_trace():
    doc = ResultDocument("direct", L(2), DerivationTrace())
    text = render(doc, include_trace=True)
    assert "trace: (empty)" in text


def test_render_is_deterministic():
    spec = parse_problem(json.dumps(ROT4))
    one = render(dispatch(spec, check_counts=(3,)), include_trace=True)
    two = render(dispatch(spec, check_counts=(3,)), include_trace=True)
    assert one == two


# -- the executable ---------------------------------------------------------------------

def test_main_quotient_class(tmp_path, capsys):
    path = write(tmp_path, ROT4)
    assert main(["quotient-class", path]) == 0
    out = capsys.readouterr().out
    assert "class: 1*L^2" in out and "route: prime-power" in out


def test_main_forced_split_cites_the_hypothesis(tmp_path, capsys):
    path = write(tmp_path, ROT4)
    assert main(["quotient-class", path, "--route", "split"]) == 1
    err = capsys.readouterr().err
    assert "hypothesis violated" in err and "roots of unity" in err


def test_main_parse_error_exit(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{nope")
    assert main(["quotient-class", str(path)]) == 3
    assert "parse error" in capsys.readouterr().err


def test_main_demo(capsys):
    assert main(["demo", "example-1-2"]) == 0
    out = capsys.readouterr().out
    assert "class: 1*L*C(-1,-1) - 1*C(-1,-1) + 1" in out
    assert "nonsplit (ramified at: 2, inf)" in out
    assert "positive definite" in out
    assert "certificate: " in out and "!=" in out
    for p, n in ((3, 9), (5, 25), (7, 49), (13, 169)):
        assert f"count p={p}: {n}" in out


def test_main_conic(capsys):
    assert main(["conic", "--a", "-1", "--b", "-1"]) == 0
    assert "nonsplit, ramified at: 2, inf" in capsys.readouterr().out
    assert main(["conic", "--a", "2", "--b", "7"]) == 0
    assert "split, point (1, 1, 3)" in capsys.readouterr().out


def test_main_conic_exhausted_is_inconclusive(capsys):
    assert main(["conic", "--a", "2", "--b", "7", "--bound", "0"]) == 2
    assert "inconclusive" in capsys.readouterr().err


def test_main_count_and_specialize(tmp_path, capsys):
    sign = write(tmp_path, SIGN2, "sign.json")
    assert main(["count", sign, "--q", "3"]) == 0
    assert "yes" in capsys.readouterr().out
    assert main(["count", sign, "--q", "5", "--method", "invariant"]) == 0
    out = capsys.readouterr().out
    assert "u0*u1 = u2^2" in out and "yes" in out
    ex = write(tmp_path, EX12, "ex.json")
    assert main(["specialize", ex, "--prime", "7",
                 "--format", "canonical"]) == 0
    assert capsys.readouterr().out == "49\n"


def test_main_certify_unknown_exit(tmp_path, capsys):
    path = write(tmp_path, EX12)
    target = "1*L*C(-1,-3) - 1*C(-1,-3) + 1"
    assert main(["quotient-class", path, "--certify-not", target]) == 2
    assert "unknown" in capsys.readouterr().out


def test_main_check_counts(tmp_path, capsys):
    path = write(tmp_path, ROT4)
    assert main(["quotient-class", path, "--check-counts", "3,5",
                 "--format", "canonical"]) == 0
    out = capsys.readouterr().out
    assert "count q=3 observed=9 predicted=9 match" in out
    assert "count q=5 observed=25 predicted=25 match" in out


def test_main_verify_suite(capsys):
    assert main(["verify-suite"]) == 0
    out = capsys.readouterr().out
    assert "5/5 batteries passed" in out
    assert "FAIL" not in out
