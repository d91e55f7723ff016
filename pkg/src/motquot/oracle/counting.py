"""Point counting over finite fields: the referee for symbolic classes.

Two independent counting methods are provided.

* `twisted_orbit_count` counts F_q-points of a stratum quotient by the
  orbit formula |(X/G)(F_q)| = |G|^(-1) * sum over g of the number of
  x in X(F_{q^N}) with Frob_q(x) = g.x, N the group exponent.
* `invariant_presentation` + `count_affine_points` build an explicit affine
  model of V/G from invariant monomials and enumerate its points directly.

Agreement between these two and the number-theoretic specialization of the
symbolic class is what the concordance checks assert.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from ..errors import BadReduction, TooLarge, UnsupportedAction
from ..ntheory import is_prime_power
from .finitefield import FiniteField, get_field

ENUM_BUDGET = 10 ** 8


# -- reduction of exact matrices into finite fields ---------------------------

def _reduce_fraction(fr, F: FiniteField) -> int:
    p = F.p
    if fr.denominator % p == 0:
        raise BadReduction(f"denominator {fr.denominator} vanishes mod {p}")
    num = F.from_int(fr.numerator)
    den = F.from_int(fr.denominator)
    return F.mul(num, F.inverse(den))


def _generator_image(field, F: FiniteField, subfield_degree: int) -> int:
    """Where the exact field generator goes inside F, or raise BadReduction."""
    kind = field.kind
    if kind == "cyclotomic":
        m = field.key[1]
        if (F.p ** subfield_degree - 1) % m != 0:
            raise BadReduction(
                f"no element of order {m} in F_{F.p ** subfield_degree}")
        return F.root_of_unity(m)
    if kind == "quadratic":
        d = field.key[1]
        root = F.square_root(F.from_int(d))
        if root is None or not F.in_subfield(root, subfield_degree):
            raise BadReduction(
                f"{d} has no square root in F_{F.p ** subfield_degree}")
        return root
    raise UnsupportedAction(f"cannot reduce a {kind} field mod p")


def reduce_elem(e, F: FiniteField, gen_image: int | None) -> int:
    """Image of an exact field element under the chosen reduction."""
    out = 0
    power = 1
    for c in e.coeffs:
        if not isinstance(c, int) and not hasattr(c, "denominator"):
            raise UnsupportedAction("nested field towers do not reduce here")
        out = F.add(out, F.mul(_reduce_fraction(c, F), power))
        if gen_image is not None:
            power = F.mul(power, gen_image)
    return out


def reduce_action_matrices(a, F: FiniteField, subfield_degree: int):
    """Generator matrices of the action as integer-coded matrices over F.

    Every entry must land in the subfield F_{p^subfield_degree}; otherwise the
    quotient has no F_q-structure to count and BadReduction is raised.
    """
    field = a.field
    gen_image = None
    if field.kind != "rational":
        gen_image = _generator_image(field, F, subfield_degree)
    out = []
    for g in a.generators:
        rows = []
        for i in range(a.dim):
            row = []
            for j in range(a.dim):
                v = reduce_elem(g[i, j], F, gen_image)
                if not F.in_subfield(v, subfield_degree):
                    raise BadReduction(
                        "matrix entry does not lie in the base field of the count")
                row.append(v)
            rows.append(row)
        out.append(rows)
    return out


def _mat_mul_f(F: FiniteField, a, b):
    n = len(a)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for k in range(n):
            aik = a[i][k]
            if aik:
                for j in range(n):
                    if b[k][j]:
                        out[i][j] = F.add(out[i][j], F.mul(aik, b[k][j]))
    return out


def _mat_identity_f(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


# -- the twisted-orbit count ---------------------------------------------------

def _blocks_of(matrix) -> list[tuple[int, ...]]:
    """Connected components of the coordinate-coupling graph of a matrix."""
    n = len(matrix)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(n):
            if i != j and (matrix[i][j] or matrix[j][i]):
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [tuple(sorted(v)) for v in sorted(groups.values())]


def _twisted_block_count(F: FiniteField, frob: list[int], rows,
                         budget: int) -> int:
    """Solutions of Frob(x_i) = sum_j rows[i][j] * x_j over F^k."""
    k = len(rows)
    size = F.size
    if size ** k > budget:
        raise TooLarge(f"{size}^{k} points exceed the budget {budget}")
    if k == 1:
        c = rows[0][0]
        return sum(1 for x in range(size) if frob[x] == F.mul(c, x))
    if k == 2:
        (g00, g01), (g10, g11) = rows
        col0 = [(F.mul(g00, x), F.mul(g10, x)) for x in range(size)]
        pairs = [((F.mul(g01, x), F.mul(g11, x)), frob[x])
                 for x in range(size)]
        count = 0
        if size <= F.ADD_TABLE_LIMIT:
            addt = F.add_table()
            for x1 in range(size):
                f1 = frob[x1]
                a1, b1 = col0[x1]
                row_a, row_b = addt[a1], addt[b1]
                for (a2, b2), f2 in pairs:
                    if row_a[a2] == f1 and row_b[b2] == f2:
                        count += 1
            return count
        for x1 in range(size):
            f1 = frob[x1]
            a1, b1 = col0[x1]
            for (a2, b2), f2 in pairs:
                if F.add(a1, a2) == f1 and F.add(b1, b2) == f2:
                    count += 1
        return count
    count = 0
    for xs in iproduct(range(size), repeat=k):
        ok = True
        for i in range(k):
            rhs = 0
            for j in range(k):
                if rows[i][j]:
                    rhs = F.add(rhs, F.mul(rows[i][j], xs[j]))
            if frob[xs[i]] != rhs:
                ok = False
                break
        if ok:
            count += 1
    return count


def _twisted_count_for_matrix(F, frob, matrix, stratum, budget) -> int:
    dim = len(matrix)
    if stratum in ("full", "nonzero"):
        total = 1
        for block in _blocks_of(matrix):
            rows = [[matrix[i][j] for j in block] for i in block]
            total *= _twisted_block_count(F, frob, rows, budget)
        return total - (1 if stratum == "nonzero" else 0)
    if not callable(stratum):
        raise ValueError("stratum must be 'full', 'nonzero' or a predicate")
    if F.size ** dim > budget:
        raise TooLarge(f"{F.size}^{dim} points exceed the budget {budget}")
    count = 0
    for xs in iproduct(range(F.size), repeat=dim):
        ok = True
        for i in range(dim):
            rhs = 0
            for j in range(dim):
                if matrix[i][j]:
                    rhs = F.add(rhs, F.mul(matrix[i][j], xs[j]))
            if frob[xs[i]] != rhs:
                ok = False
                break
        if ok and stratum(xs):
            count += 1
    return count


def twisted_orbit_count(a, stratum, q: int, budget: int = ENUM_BUDGET) -> int:
    """F_q-points of (stratum of V)/G by averaging twisted Frobenius counts.

    `stratum` is "full", "nonzero" (origin removed; both G-stable for linear
    actions) or a predicate on coordinate tuples of integer-coded elements of
    F_{q^N}.  Named strata factor through the coordinate blocks of each group
    element, which only regroups the product defining the count.
    """
    pf = is_prime_power(q)
    if pf is None or pf[0] < 2:
        raise ValueError(f"{q} is not a prime power")
    p, f = pf
    if p == 2:
        raise BadReduction("counting needs odd characteristic")
    if a.group.size % p == 0:
        raise BadReduction(f"p = {p} divides the group order {a.group.size}")
    n_exp = a.group.exponent
    F = get_field(p, f * n_exp)
    frob = [F.pow(x, q) for x in range(F.size)]
    gens = reduce_action_matrices(a, F, f)
    gen_pows = []
    for g, order in zip(gens, a.group.orders):
        pows = [_mat_identity_f(a.dim)]
        for _ in range(order - 1):
            pows.append(_mat_mul_f(F, pows[-1], g))
        gen_pows.append(pows)
    total = 0
    for t in a.exponent_tuples():
        m = _mat_identity_f(a.dim)
        for i, e in enumerate(t):
            if e:
                m = _mat_mul_f(F, m, gen_pows[i][e])
        total += _twisted_count_for_matrix(F, frob, m, stratum, budget)
    if total % a.group.size:
        raise ArithmeticError(
            "twisted counts do not average to an integer; reduction is wrong")
    return total // a.group.size


# -- invariant presentations ---------------------------------------------------

PRESENTATION_MAX_DIM = 2
PRESENTATION_MAX_ORDER = 6


@dataclass
class Presentation:
    """Invariant monomial generators and binomial relations for V/G."""

    order: int
    weights: tuple[int, ...]
    generators: list[tuple[int, ...]]
    relations: list[tuple[tuple[int, ...], tuple[int, ...]]]

    def generator_names(self) -> list[str]:
        return [monomial_str(g) for g in self.generators]

    def relation_strings(self) -> list[str]:
        out = []
        for lhs, rhs in self.relations:
            out.append(f"{_gen_product_str(lhs)} = {_gen_product_str(rhs)}")
        return out


_VARS = "xyzw"


def monomial_str(alpha: tuple[int, ...]) -> str:
    parts = []
    for i, e in enumerate(alpha):
        if e == 1:
            parts.append(_VARS[i])
        elif e > 1:
            parts.append(f"{_VARS[i]}^{e}")
    return "*".join(parts) if parts else "1"


def _gen_product_str(indices: tuple[int, ...]) -> str:
    parts = []
    for i in sorted(set(indices)):
        e = indices.count(i)
        parts.append(f"u{i}" if e == 1 else f"u{i}^{e}")
    return "*".join(parts)


def presentation_from_weights(n: int, weights: tuple[int, ...]) -> Presentation:
    """Invariant-monomial presentation for the diagonal action of Z/n with
    the given character weights (one per coordinate)."""
    dim = len(weights)
    if dim > PRESENTATION_MAX_DIM:
        raise UnsupportedAction(f"dimension {dim} > {PRESENTATION_MAX_DIM}")
    if n > PRESENTATION_MAX_ORDER:
        raise UnsupportedAction(f"group order {n} > {PRESENTATION_MAX_ORDER}")
    invariant = []
    for alpha in iproduct(*(range(n + 1) for _ in range(dim))):
        if alpha == (0,) * dim or sum(alpha) > n:
            continue
        if sum(a * w for a, w in zip(alpha, weights)) % n == 0:
            invariant.append(alpha)
    inv_set = set(invariant)
    basis = []
    for alpha in invariant:
        decomposable = any(
            beta != alpha
            and all(b <= a for b, a in zip(beta, alpha))
            and tuple(a - b for a, b in zip(alpha, beta)) in inv_set
            for beta in invariant)
        if not decomposable:
            basis.append(alpha)
    # every invariant monomial in the enumeration must factor over the basis
    for alpha in invariant:
        if not _decomposes(alpha, basis):
            raise ArithmeticError(f"Hilbert basis misses {alpha}")
    pure = sorted((g for g in basis if sum(1 for e in g if e) == 1),
                  key=lambda g: g.index(next(e for e in g if e)))
    mixed = sorted((g for g in basis if sum(1 for e in g if e) != 1),
                   key=lambda g: (sum(g), g))
    ordered = pure + mixed
    relations = []
    seen = set()
    for i in range(len(ordered)):
        for j in range(i, len(ordered)):
            target = tuple(a + b for a, b in zip(ordered[i], ordered[j]))
            for rep in _representations(target, ordered):
                if rep == (i, j):
                    continue
                key = tuple(sorted([(i, j), rep]))
                if key not in seen:
                    seen.add(key)
                    relations.append(((i, j), rep))
    return Presentation(n, tuple(weights), ordered, relations)


def _decomposes(alpha, basis) -> bool:
    if all(a == 0 for a in alpha):
        return True
    for beta in basis:
        if all(b <= a for b, a in zip(beta, alpha)):
            if _decomposes(tuple(a - b for a, b in zip(alpha, beta)), basis):
                return True
    return False


def _representations(target, gens, start=0):
    """All multisets of generator indices (nondecreasing) summing to target."""
    if all(t == 0 for t in target):
        yield ()
        return
    for i in range(start, len(gens)):
        g = gens[i]
        if all(a <= t for a, t in zip(g, target)):
            rest = tuple(t - a for t, a in zip(target, g))
            for tail in _representations(rest, gens, i):
                yield (i,) + tail


def invariant_presentation(a) -> Presentation:
    """Presentation for a diagonal cyclic action.

    Accepts either a GroupAction over a field containing the needed roots of
    unity, or a ready-made pair (n, weights) for actions already written as
    diagonal root-of-unity matrices (the mod-p form).
    """
    if isinstance(a, tuple) and len(a) == 2:
        n, weights = a
        return presentation_from_weights(int(n), tuple(weights))
    from ..repgroup import cyclic_image_generator
    sigma, n = cyclic_image_generator(a)
    for i in range(a.dim):
        for j in range(a.dim):
            if i != j and not sigma[i, j].is_zero():
                raise UnsupportedAction("action is not diagonal")
    root = a.field.unit_root_gen() ** (a.field.unit_root_order() // n)
    weights = []
    for i in range(a.dim):
        entry = sigma[i, i]
        for t in range(n):
            if root ** t == entry:
                weights.append(t)
                break
        else:
            raise UnsupportedAction(
                "diagonal entry is not a power of the chosen root of unity")
    return presentation_from_weights(n, tuple(weights))


# -- direct enumeration of an affine model -------------------------------------

def count_affine_points(relations, ambient_dim: int, q: int,
                        budget: int = ENUM_BUDGET) -> int:
    """Solutions over F_q of the binomial system u_lhs-product = u_rhs-product.

    `relations` is a list of pairs of index tuples into the ambient
    coordinates; an empty list counts all of affine space.
    """
    pf = is_prime_power(q)
    if pf is None or pf[0] < 2:
        raise ValueError(f"{q} is not a prime power")
    if q > 81:
        raise ValueError("counting fields are capped at q = 81")
    if q ** ambient_dim > budget:
        raise TooLarge(f"{q}^{ambient_dim} points exceed the budget {budget}")
    F = get_field(*pf)
    count = 0
    for xs in iproduct(range(F.size), repeat=ambient_dim):
        ok = True
        for lhs, rhs in relations:
            left = 1
            for i in lhs:
                left = F.mul(left, xs[i])
            right = 1
            for i in rhs:
                right = F.mul(right, xs[i])
            if left != right:
                ok = False
                break
        if ok:
            count += 1
    return count


# -- reporting ------------------------------------------------------------------

@dataclass
class CountReport:
    method: str        # twisted-orbit | invariant-presentation | direct-enumeration
    q: int
    observed: int
    predicted: int
    label: str = ""

    @property
    def match(self) -> bool:
        return self.observed == self.predicted


def render_count_table(reports) -> str:
    """Fixed-column table of count reports."""
    headers = ("label", "method", "q", "observed", "predicted", "match")
    rows = [(r.label, r.method, str(r.q), str(r.observed),
             str(r.predicted), "yes" if r.match else "NO") for r in reports]
    widths = [max(len(h), *(len(row[i]) for row in rows)) if rows else len(h)
              for i, h in enumerate(headers)]
    lines = []
    header = "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers))
    lines.append(header.rstrip())
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        cells = []
        for i, cell in enumerate(row):
            if headers[i] in ("q", "observed", "predicted"):
                cells.append(cell.rjust(widths[i]))
            else:
                cells.append(cell.ljust(widths[i]))
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines)
