"""Batch command line: parse problem files, compute quotient classes with
traces, certify inequalities, and drive the counting and conic oracles.

Problem files are JSON with string matrix entries in the field-element
grammar (integers, fractions, and the field generator written z, z<m>,
s, or sqrt(<d>), combined with *, ^ and signs), for example:

    {"field": "cyclotomic 4", "orders": [4],
     "generators": [[["z", "0"], ["0", "-1"]]]}

    {"field": "rational", "descent": {"d": -1,
     "matrix": [["0", "1"], ["-1", "0"]]}}

Exit codes: 0 success, 1 hypothesis violation, 2 inconclusive outcome,
3 malformed input.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    Inconclusive,
    MotQuotError,
    NonCyclicImage,
    ParseError,
    SearchExhausted,
    ValidationError,
)
from .exact import (
    QQ,
    FieldElem,
    Matrix,
    NumberField,
    cyclotomic_field,
    elem_to_str,
    quadratic_field,
)
from .kring import (
    Atom,
    DerivationTrace,
    KExpr,
    specialize_count_prime_power,
)
from .ntheory import (
    hilbert_symbol,
    is_prime_power,
    relevant_places,
    squarefree_part,
)
from .oracle import (
    CountReport,
    QuaternionSymbol,
    conic_rational_point,
    count_affine_points,
    invariant_presentation,
    quaternary_fixed_point_test,
    render_count_table,
    twisted_orbit_count,
)
from .quotient import (
    EQUAL,
    UNKNOWN,
    DescentDatum,
    InequalityCertificate,
    cyclic_prime_power_class,
    descent_conic_quotient,
    inequality_certificate,
    looijenga_split_class,
    prop131_class,
)
from .repgroup import AbelianGroup, GroupAction, cyclic_image_generator


# -- field-element entries -----------------------------------------------------------

_GEN_PART = re.compile(r"(z\d*|sqrt\((-?\d+)\)|s)(?:\^(\d+))?\Z")


def _signed_chunks(text: str):
    """Split on top-level + and - (parenthesized signs stay inside)."""
    chunks = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > start:
            chunks.append(text[start:i])
            start = i
    chunks.append(text[start:])
    return chunks


def _field_generator(field: NumberField, name: str, inner) -> FieldElem:
    if name.startswith("z"):
        if field.kind != "cyclotomic":
            raise ParseError(f"generator {name!r} needs a cyclotomic field, "
                             f"the problem declares {field}")
        if name != "z" and int(name[1:]) != field.key[1]:
            raise ParseError(f"generator {name!r} does not match {field}")
    else:
        if field.kind != "quadratic":
            raise ParseError(f"generator {name!r} needs a quadratic field, "
                             f"the problem declares {field}")
        if inner is not None and int(inner) != field.key[1]:
            raise ParseError(f"generator {name!r} does not match {field}")
    return field.gen()


def parse_entry(text: str, field: NumberField) -> FieldElem:
    """One matrix entry: signed sum of terms `coef`, `coef*gen^k`, `gen^k`."""
    squeezed = "".join(text.split())
    if not squeezed:
        raise ParseError("empty matrix entry")
    total = field.zero()
    for chunk in _signed_chunks(squeezed):
        sign = 1
        if chunk[0] in "+-":
            sign = -1 if chunk[0] == "-" else 1
            chunk = chunk[1:]
        if not chunk:
            raise ParseError(f"dangling sign in entry {text!r}")
        coef_str, star, gen_str = chunk.partition("*")
        if not star:
            try:
                total = total + sign * field.coerce(Fraction(chunk))
                continue
            except ValueError:
                coef_str, gen_str = "", chunk
        if coef_str:
            try:
                coef = Fraction(coef_str)
            except ValueError:
                raise ParseError(f"bad coefficient {coef_str!r} "
                                 f"in entry {text!r}") from None
        else:
            coef = Fraction(1)
        m = _GEN_PART.fullmatch(gen_str)
        if m is None:
            raise ParseError(f"bad term {chunk!r} in entry {text!r}")
        gen = _field_generator(field, m.group(1).split("(")[0]
                               if "(" in m.group(1) else m.group(1),
                               m.group(2))
        power = int(m.group(3)) if m.group(3) else 1
        total = total + sign * field.coerce(coef) * gen ** power
    return total


def _parse_matrix(rows, field: NumberField, what: str) -> Matrix:
    if (not isinstance(rows, list) or not rows
            or any(not isinstance(r, list) or len(r) != len(rows)
                   for r in rows)):
        raise ParseError(f"{what} must be a square list-of-lists matrix")
    parsed = []
    for row in rows:
        out = []
        for entry in row:
            if not isinstance(entry, str):
                raise ParseError(
                    f"matrix entries are strings, got {entry!r} in {what}")
            out.append(parse_entry(entry, field))
        parsed.append(out)
    return Matrix(field, parsed)


# -- problem files --------------------------------------------------------------------

TASKS = ("quotient-class", "count", "specialize", "certify")


@dataclass(frozen=True)
class ProblemSpec:
    """A parsed problem: a linear action over a declared field, or a
    quadratic descent datum, plus a task selector."""

    field: NumberField
    orders: tuple[int, ...]
    generators: tuple[Matrix, ...]
    descent_d: int | None
    descent_matrix: Matrix | None
    task: str

    def action(self) -> GroupAction:
        if not self.generators:
            raise MotQuotError(
                "this problem has no generator matrices, only a "
                "descent datum")
        dim = self.generators[0].nrows
        return GroupAction(AbelianGroup(self.orders), self.field, dim,
                           list(self.generators))

    def descent(self) -> DescentDatum:
        if self.descent_matrix is None:
            raise MotQuotError("this problem has no descent datum")
        return DescentDatum(self.descent_d, self.descent_matrix)


def _parse_field(desc) -> NumberField:
    if not isinstance(desc, str):
        raise ParseError(f"field descriptor must be a string, got {desc!r}")
    parts = desc.split()
    if parts == ["rational"]:
        return QQ
    if len(parts) == 2 and parts[0] in ("cyclotomic", "quadratic"):
        try:
            n = int(parts[1])
        except ValueError:
            raise ParseError(f"bad field parameter {parts[1]!r}") from None
        try:
            return (cyclotomic_field(n) if parts[0] == "cyclotomic"
                    else quadratic_field(n))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    raise ParseError(
        f"unknown field descriptor {desc!r}; use 'rational', "
        "'cyclotomic M' or 'quadratic d'")


def parse_problem(text: str) -> ProblemSpec:
    """Parse, fully validating the declared action or descent datum."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise ParseError("a problem file holds one JSON object")
    unknown = set(data) - {"field", "orders", "generators", "descent", "task"}
    if unknown:
        raise ParseError(f"unknown keys: {', '.join(sorted(unknown))}")
    field = _parse_field(data.get("field", "rational"))
    task = data.get("task", "quotient-class")
    if task not in TASKS:
        raise ParseError(f"unknown task {task!r}; choose from {TASKS}")

    orders = data.get("orders", [])
    if (not isinstance(orders, list)
            or any(not isinstance(n, int) or n < 1 for n in orders)):
        raise ParseError("orders must be a list of positive integers")
    raw_gens = data.get("generators", [])
    if not isinstance(raw_gens, list):
        raise ParseError("generators must be a list of matrices")
    if len(raw_gens) != len(orders):
        raise ParseError(f"{len(orders)} orders but {len(raw_gens)} "
                         "generator matrices")
    generators = tuple(_parse_matrix(rows, field, f"generator {i}")
                       for i, rows in enumerate(raw_gens))

    descent_d = descent_matrix = None
    if "descent" in data:
        dd = data["descent"]
        if not isinstance(dd, dict) or "d" not in dd or "matrix" not in dd:
            raise ParseError("descent needs keys 'd' and 'matrix'")
        if set(dd) - {"d", "matrix", "c"}:
            raise ParseError("descent allows only keys d, matrix, c")
        if not isinstance(dd["d"], int):
            raise ParseError("descent key 'd' must be an integer")
        descent_d = dd["d"]
        if descent_d in (0, 1) or squarefree_part(descent_d) != descent_d:
            raise ParseError(f"descent key 'd' must be squarefree and "
                             f"define a quadratic field, got {descent_d}")
        ext = quadratic_field(descent_d)
        descent_matrix = _parse_matrix(dd["matrix"], ext, "descent matrix")

    if generators and descent_matrix is not None:
        raise ParseError(
            "give either generator matrices or a descent datum, not both")
    if not generators and descent_matrix is None:
        raise ParseError("nothing to do: no generators and no descent datum")

    spec = ProblemSpec(field, tuple(orders), generators,
                       descent_d, descent_matrix, task)
    if generators:
        spec.action()          # runs the full action validation
    datum = None
    if descent_matrix is not None:
        datum = spec.descent()  # runs involution and order validation
        if "c" in data["descent"]:
            try:
                declared = Fraction(str(data["descent"]["c"]))
            except ValueError:
                raise ParseError("descent key 'c' must be a rational "
                                 "number") from None
            if declared != datum.c:
                raise ValidationError(
                    [f"declared c = {declared} but M*conj(M) = {datum.c}*I"])
    return spec


def serialize_problem(spec: ProblemSpec) -> str:
    """Canonical JSON text; parse_problem inverts it exactly."""
    data: dict = {"task": spec.task}
    if spec.field is QQ:
        data["field"] = "rational"
    elif spec.field.kind == "cyclotomic":
        data["field"] = f"cyclotomic {spec.field.key[1]}"
    else:
        data["field"] = f"quadratic {spec.field.key[1]}"
    data["orders"] = list(spec.orders)
    if spec.generators:
        data["generators"] = [
            [[elem_to_str(c) for c in row] for row in m.rows]
            for m in spec.generators]
    if spec.descent_matrix is not None:
        data["descent"] = {
            "d": spec.descent_d,
            "matrix": [[elem_to_str(c) for c in row]
                       for row in spec.descent_matrix.rows],
            "c": str(spec.descent().c),
        }
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


# -- canonical expressions -------------------------------------------------------------

_COEF_RE = re.compile(r"-?\d+\Z")
_L_RE = re.compile(r"L(?:\^(\d+))?\Z")
_CONIC_RE = re.compile(r"C\((-?\d+),(-?\d+)\)\Z")
_ETALE_RE = re.compile(r"SpecQ\(sqrt\((-?\d+)\)\)\Z")


def parse_kexpr(text: str, base: NumberField = QQ) -> KExpr:
    """Inverse of the canonical rendering (and of bare forms like L^2)."""
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty expression")
    pieces = re.split(r" ([+-]) ", stripped)
    total = KExpr.scalar(base, 0)
    sign = 1
    for i, piece in enumerate(pieces):
        if i % 2:
            sign = -1 if piece == "-" else 1
            continue
        if i == 0 and piece.startswith("-"):
            sign, piece = -1, piece[1:]
        term = KExpr.scalar(base, sign)
        saw_value = False
        for part in piece.split("*"):
            if _COEF_RE.fullmatch(part):
                if saw_value:
                    raise ParseError(
                        f"coefficient {part!r} after the start of the "
                        f"term in {text!r}")
                term = term * int(part)
                saw_value = True
                continue
            saw_value = True
            m = _L_RE.fullmatch(part)
            if m:
                term = term * KExpr.lefschetz(
                    base, int(m.group(1)) if m.group(1) else 1)
                continue
            m = _CONIC_RE.fullmatch(part)
            if m:
                term = term * KExpr.of_atom(
                    base, Atom("conic", (int(m.group(1)), int(m.group(2)))))
                continue
            m = _ETALE_RE.fullmatch(part)
            if m:
                term = term * KExpr.of_atom(
                    base, Atom("etale", (int(m.group(1)),)))
                continue
            raise ParseError(f"cannot parse term {part!r} in {text!r}")
        if not saw_value:
            raise ParseError(f"empty term in {text!r}")
        total = total + term
    return total


# -- dispatch ---------------------------------------------------------------------------

ROUTES = ("split", "prime-power", "descent", "direct")


@dataclass
class ResultDocument:
    route: str
    expression: KExpr
    trace: DerivationTrace
    certificate: object = None       # InequalityCertificate | EQUAL | UNKNOWN
    certify_target: KExpr | None = None
    counts: list[CountReport] | None = None
    exit_status: int = 0


def select_route(spec: ProblemSpec) -> str:
    """The documented fixed order: split when the roots of unity are
    present, else the prime-power recursion when the image is cyclic of
    prime-power order, descent when the problem is a descent datum, and
    the direct small-dimension route last."""
    if spec.descent_matrix is not None:
        return "descent"
    a = spec.action()
    if a.field.contains_nth_roots(a.group.exponent):
        return "split"
    try:
        _, order = cyclic_image_generator(a)
    except NonCyclicImage:
        order = None
    if order is not None and is_prime_power(order) is not None:
        return "prime-power"
    if a.dim <= 2:
        return "direct"
    raise MotQuotError(
        "no route applies: the field lacks the needed roots of unity, "
        "the image is not cyclic of prime-power order, and the dimension "
        "exceeds 2")


def _run_route(spec: ProblemSpec, route: str):
    if route == "descent":
        return descent_conic_quotient(spec.descent())
    a = spec.action()
    if route == "split":
        return looijenga_split_class(a)
    if route == "prime-power":
        return cyclic_prime_power_class(a)
    return prop131_class(a)


def dispatch(spec: ProblemSpec, route: str | None = None,
             certify_not: KExpr | None = None,
             check_counts: tuple[int, ...] = (),
             bound: int = 10 ** 4) -> ResultDocument:
    name = route or select_route(spec)
    if name not in ROUTES:
        raise ParseError(f"unknown route {name!r}; choose from {ROUTES}")
    expr, trace = _run_route(spec, name)
    doc = ResultDocument(name, expr, trace)
    if certify_not is not None:
        doc.certify_target = certify_not
        doc.certificate = inequality_certificate(expr, certify_not, bound)
        if doc.certificate == UNKNOWN:
            doc.exit_status = 2
    if check_counts:
        a = spec.action()
        doc.counts = []
        for q in check_counts:
            pf = is_prime_power(q)
            if pf is None:
                raise ParseError(f"count check at q = {q}: not a prime power")
            observed = twisted_orbit_count(a, "full", q)
            predicted = specialize_count_prime_power(expr, *pf)
            doc.counts.append(CountReport(
                "twisted-orbit", q, observed, predicted, label="V/G"))
        if any(not r.match for r in doc.counts):
            doc.exit_status = 1
    return doc


def render(doc: ResultDocument, fmt: str = "text",
           include_trace: bool = False) -> str:
    lines = []
    if fmt == "canonical":
        lines.append(doc.expression.render())
        if doc.certificate is not None:
            status = ("certified"
                      if isinstance(doc.certificate, InequalityCertificate)
                      else doc.certificate)
            lines.append(f"certificate: {status}")
        if doc.counts:
            for r in doc.counts:
                lines.append(
                    f"count q={r.q} observed={r.observed} "
                    f"predicted={r.predicted} "
                    + ("match" if r.match else "MISMATCH"))
        return "\n".join(lines) + "\n"
    lines.append(f"route: {doc.route}")
    lines.append(f"class: {doc.expression.render()}")
    if include_trace:
        lines.extend(_trace_lines(doc.trace))
    if doc.certificate is not None:
        target = doc.certify_target.render()
        if isinstance(doc.certificate, InequalityCertificate):
            lines.append(f"certificate: {doc.certificate.summary()}")
        elif doc.certificate == EQUAL:
            lines.append(f"certificate: the class equals {target}; "
                         "there is no inequality to certify")
        else:
            lines.append(f"certificate: unknown whether the class differs "
                         f"from {target}")
    if doc.counts:
        lines.append("counts:")
        lines.extend("  " + row
                     for row in render_count_table(doc.counts).splitlines())
    return "\n".join(lines) + "\n"


def _trace_lines(trace: DerivationTrace) -> list[str]:
    body = trace.format_steps()
    if not body:
        return ["trace: (empty)"]
    out = ["trace:"]
    step = 0
    for line in body:
        if line.startswith("note: "):
            out.append("  " + line)
        else:
            step += 1
            out.append(f"  step {step}: {line}")
    return out


# -- commands ---------------------------------------------------------------------------

def _read_spec(path: str) -> ProblemSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_problem(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def cmd_quotient_class(args) -> int:
    spec = _read_spec(args.file)
    certify = parse_kexpr(args.certify_not) if args.certify_not else None
    counts = _parse_count_list(args.check_counts)
    doc = dispatch(spec, route=args.route, certify_not=certify,
                   check_counts=counts, bound=args.bound)
    print(render(doc, args.format, include_trace=args.trace), end="")
    return doc.exit_status


def cmd_demo(args) -> int:
    datum = DescentDatum(
        -1, Matrix(quadratic_field(-1), [[0, 1], [-1, 0]]))
    expr, trace = descent_conic_quotient(datum)
    doc = ResultDocument("descent", expr, trace)
    sym = conic_rational_point(QuaternionSymbol(-1, -1), args.bound)
    report = quaternary_fixed_point_test(datum)
    cert = inequality_certificate(expr, KExpr.lefschetz(QQ, 2), args.bound)
    counts = [(p, specialize_count_prime_power(expr, p, 1))
              for p in (3, 5, 7, 13)]
    if args.format == "canonical":
        lines = [expr.render(),
                 f"conic: {sym.status}",
                 f"fixed-points: {report.status}",
                 "certificate: "
                 + ("certified" if isinstance(cert, InequalityCertificate)
                    else str(cert))]
        lines += [f"count p={p} {n}" for p, n in counts]
        print("\n".join(lines))
        return 0 if isinstance(cert, InequalityCertificate) else 2
    print(render(doc, include_trace=args.trace), end="")
    print(f"conic C({sym.a},{sym.b}): {sym.status} "
          f"({sym.obstruction_string()})")
    print(f"fixed points on the line: {report.status} ({report.reason})")
    if isinstance(cert, InequalityCertificate):
        print(f"certificate: {cert.summary()}")
        status = 0
    else:
        print(f"certificate: {cert}")
        status = 2
    for p, n in counts:
        print(f"count p={p}: {n}")
    return status


def cmd_conic(args) -> int:
    sym = conic_rational_point(QuaternionSymbol(args.a, args.b), args.bound)
    if args.format == "canonical":
        print(f"C({sym.a},{sym.b}) {sym.status}")
        return 0
    line = f"conic C({sym.a},{sym.b}): {sym.status}"
    if sym.status == "split":
        line += f", point {sym.point}"
    else:
        line += f", {sym.obstruction_string()}"
    print(line)
    return 0


def cmd_count(args) -> int:
    spec = _read_spec(args.file)
    a = spec.action()
    predicted = args.q ** a.dim
    if args.method == "twisted":
        observed = twisted_orbit_count(a, "full", args.q)
        report = CountReport("twisted-orbit", args.q, observed, predicted,
                             label="V/G")
    else:
        pres = invariant_presentation(a)
        observed = count_affine_points(
            pres.relations, len(pres.generators), args.q)
        report = CountReport("invariant-presentation", args.q, observed,
                             predicted, label="V/G")
        if args.format != "canonical":
            print("generators: " + ", ".join(pres.generator_names()))
            rels = pres.relation_strings()
            print("relations: " + ("; ".join(rels) if rels else "(none)"))
    if args.format == "canonical":
        print(f"count q={report.q} observed={report.observed} "
              f"predicted={report.predicted} "
              + ("match" if report.match else "MISMATCH"))
    else:
        print(render_count_table([report]))
    return 0 if report.match else 1


def cmd_specialize(args) -> int:
    spec = _read_spec(args.file)
    doc = dispatch(spec, route=args.route)
    pf = is_prime_power(args.prime)
    if pf is None or pf[0] < 2:
        raise ParseError(f"{args.prime} is not a prime power")
    n = specialize_count_prime_power(doc.expression, *pf)
    if args.format == "canonical":
        print(n)
    else:
        print(f"class: {doc.expression.render()}")
        print(f"points over F_{args.prime}: {n}")
    return 0


# -- the self-check battery ---------------------------------------------------------------

def _battery_split() -> str:
    cases = []
    k3, k4, k6 = (cyclotomic_field(m) for m in (3, 4, 6))
    z3, z4, z6 = k3.gen(), k4.gen(), k6.gen()
    cases += [(QQ, (2,), [[[-1, 0], [0, -1]]]),
              (QQ, (2,), [[[-1, 0], [0, 1]]]),
              (QQ, (2, 2), [[[-1, 0], [0, 1]], [[1, 0], [0, -1]]]),
              (QQ, (2,), [[[-1, 0, 0], [0, -1, 0], [0, 0, -1]]])]
    cases += [(k3, (3,), [[[z3, 0], [0, z3 ** 2]]]),
              (k3, (3,), [[[z3, 0], [0, 1]]]),
              (k3, (3, 3), [[[z3, 0], [0, 1]], [[1, 0], [0, z3]]])]
    cases += [(k4, (4,), [[[z4, 0], [0, -1]]]),
              (k4, (4,), [[[z4, 0, 0], [0, z4 ** 3, 0], [0, 0, -1]]]),
              (k4, (4, 2), [[[z4, 0], [0, 1]], [[1, 0], [0, -1]]])]
    cases += [(k6, (6,), [[[z6, 0], [0, z6 ** 5]]]),
              (k6, (6,), [[[z6, 0, 0, 0], [0, z6 ** 2, 0, 0],
                           [0, 0, z6 ** 3, 0], [0, 0, 0, 1]]])]
    for field, orders, rows in cases:
        mats = [Matrix(field, m) for m in rows]
        a = GroupAction(AbelianGroup(orders), field, mats[0].nrows, mats)
        expr, _ = looijenga_split_class(a)
        assert expr == KExpr.lefschetz(field, a.dim), (field, orders)
    return f"{len(cases)} split actions all equal L^dim"


def _battery_recursion() -> str:
    rot = Matrix(QQ, [[0, -1], [1, 0]])
    omg = Matrix(QQ, [[0, -1], [1, -1]])
    neg = Matrix(QQ, [[-1]])
    one = Matrix(QQ, [[1]])
    cases = [((4,), [rot]), ((4,), [Matrix.block_diag(QQ, [rot, rot])]),
             ((4,), [Matrix.block_diag(QQ, [rot, neg])]),
             ((4,), [Matrix.block_diag(QQ, [rot, rot, neg, one])]),
             ((3,), [omg]), ((3,), [Matrix.block_diag(QQ, [omg, omg])]),
             ((3,), [Matrix.block_diag(QQ, [omg, omg, omg])]),
             ((3,), [Matrix.block_diag(QQ, [omg, one, one])])]
    for orders, mats in cases:
        a = GroupAction(AbelianGroup(orders), QQ, mats[0].nrows, mats)
        expr, trace = cyclic_prime_power_class(a)
        assert expr == KExpr.lefschetz(QQ, a.dim), orders
        trace.validate()
    return f"{len(cases)} prime-power recursions all equal L^dim"


def _battery_descent() -> str:
    cases = [(-1, [[0, 1], [-1, 0]]), (-1, [[0, 1], [1, 0]]),
             (2, [[0, 1], [-1, 0]]), (2, [[0, 1], [1, 0]]),
             (-2, [[0, 1], [1, 0]]), (-3, [[0, 1], [-1, 0]]),
             (5, [[0, 1], [1, 0]]), (-3, [[0, 1], [1, 0]])]
    for d, rows in cases:
        datum = DescentDatum(d, Matrix(quadratic_field(d), rows))
        report = quaternary_fixed_point_test(datum)
        c_int = datum.c.numerator * datum.c.denominator
        split = all(hilbert_symbol(d, c_int, v) == 1
                    for v in relevant_places(d, c_int))
        assert (report.status == "solution") == split, (d, rows)
    return f"{len(cases)} descent data agree with the Hilbert verdict"


def _battery_hilbert() -> str:
    rng = random.Random(70001)
    checked = 0
    while checked < 50:
        a = rng.randint(-30, 30)
        b = rng.randint(-30, 30)
        if a == 0 or b == 0:
            continue
        product = 1
        for v in relevant_places(a, b):
            product *= hilbert_symbol(a, b, v)
        assert product == 1, (a, b)
        sym = conic_rational_point(QuaternionSymbol(a, b))
        assert sym.verify(), (a, b)
        checked += 1
    return "product formula and point search on 50 random symbols"


def _battery_counts() -> str:
    rot = Matrix(QQ, [[0, -1], [1, 0]])
    pairs = []
    for orders, mats in [((2,), [Matrix(QQ, [[-1, 0], [0, -1]])]),
                         ((4,), [rot])]:
        a = GroupAction(AbelianGroup(orders), QQ, 2, mats)
        for q in (3, 5):
            if a.group.size % q:
                pairs.append((a, q))
    for a, q in pairs:
        assert twisted_orbit_count(a, "full", q) == q ** a.dim
    return f"{len(pairs)} twisted-orbit counts equal q^dim"


def cmd_verify_suite(args) -> int:
    batteries = [("split stratification", _battery_split),
                 ("prime-power recursion", _battery_recursion),
                 ("descent vs Hilbert", _battery_descent),
                 ("Hilbert product formula", _battery_hilbert),
                 ("twisted-orbit counting", _battery_counts)]
    failed = 0
    for name, fn in batteries:
        try:
            detail = fn()
        except Exception as exc:  # a battery failure is the report itself
            failed += 1
            print(f"FAIL - {name}: {exc!r}")
        else:
            print(f"ok - {name}: {detail}")
    print(f"{len(batteries) - failed}/{len(batteries)} batteries passed")
    return 1 if failed else 0


# -- argument parsing -----------------------------------------------------------------

def _parse_count_list(text: str | None) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ParseError(
            f"--check-counts wants comma-separated integers, got "
            f"{text!r}") from None


def _add_common(sub, trace=True):
    sub.add_argument("--format", choices=("text", "canonical"),
                     default="text", help="output style")
    sub.add_argument("--bound", type=int, default=10 ** 4,
                     help="height bound for point searches")
    if trace:
        sub.add_argument("--trace", action="store_true",
                         help="include the derivation trace")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="motquot",
        description="Exact classes of linear quotients V/G with "
                    "derivations, certificates and counting oracles.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("quotient-class",
                        help="compute [V/G] from a problem file")
    p.add_argument("file")
    p.add_argument("--route", choices=ROUTES,
                   help="override the automatic route selection")
    p.add_argument("--certify-not", metavar="EXPR",
                   help="certify the class differs from this expression")
    p.add_argument("--check-counts", metavar="Q1,Q2",
                   help="cross-check point counts at these prime powers")
    _add_common(p)
    p.set_defaults(func=cmd_quotient_class)

    p = subs.add_parser("demo", help="walk a built-in worked example")
    p.add_argument("name", choices=("example-1-2",))
    _add_common(p)
    p.set_defaults(func=cmd_demo)

    p = subs.add_parser("conic", help="decide a conic C(a,b) over Q")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    _add_common(p, trace=False)
    p.set_defaults(func=cmd_conic)

    p = subs.add_parser("count", help="count quotient points over F_q")
    p.add_argument("file")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--method", choices=("twisted", "invariant"),
                   default="twisted")
    _add_common(p, trace=False)
    p.set_defaults(func=cmd_count)

    p = subs.add_parser("specialize",
                        help="point count of the class at a prime power")
    p.add_argument("file")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--route", choices=ROUTES)
    _add_common(p, trace=False)
    p.set_defaults(func=cmd_specialize)

    p = subs.add_parser("verify-suite",
                        help="run the built-in consistency batteries")
    _add_common(p, trace=False)
    p.set_defaults(func=cmd_verify_suite)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 3
    except (SearchExhausted, Inconclusive) as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return 2
    except MotQuotError as exc:
        print(f"hypothesis violated: {exc}", file=sys.stderr)
        return 1
    except ArithmeticError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
