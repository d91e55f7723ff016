"""Finite abelian groups acting linearly: validation, characters,
eigenspace and irreducible decompositions.

A :class:`GroupAction` is a finite abelian group Z/n_1 x ... x Z/n_r given
by one invertible finite-order matrix per cyclic factor, all commuting.
The two decompositions offered are the simultaneous eigenspace splitting
(available when the base field has all exp(G)-th roots of unity) and the
splitting into invariant subspaces of dimension 1 or 2 cut out by the
irreducible factors of the image generator's minimal polynomial. The
latter only applies when the image of the group in GL(V) is cyclic,
which is also the only case the downstream recursion needs.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from math import gcd, lcm

from .errors import (
    NoFaithfulFactor,
    NonCyclicImage,
    NotPrimePower,
    RootsOfUnityMissing,
    TooLarge,
    ValidationError,
)
from .exact.factor import factor_unity_poly
from .exact.field import FieldElem, NumberField
from .exact.matrix import Matrix
from .exact.poly import UniPoly, order_of_t_mod
from .ntheory import is_prime_power

IMAGE_ENUM_LIMIT = 4096


@dataclass(frozen=True)
class AbelianGroup:
    """Z/n_1 x ... x Z/n_r; the empty product is the trivial group."""

    orders: tuple[int, ...]

    def __post_init__(self):
        if any(n < 2 for n in self.orders):
            raise ValueError("cyclic factor orders must be >= 2")

    @property
    def exponent(self) -> int:
        return lcm(*self.orders) if self.orders else 1

    @property
    def size(self) -> int:
        out = 1
        for n in self.orders:
            out *= n
        return out

    def __repr__(self):
        if not self.orders:
            return "1"
        return " x ".join(f"Z/{n}" for n in self.orders)


@dataclass(frozen=True)
class Character:
    """A character of the group, stored as one exponent per cyclic factor;
    generator i is sent to (fixed primitive n_i-th root)^exponents[i] when
    the field permits realizing the values."""

    orders: tuple[int, ...]
    exponents: tuple[int, ...]
    realized: tuple[FieldElem, ...] | None = None

    @property
    def is_trivial(self) -> bool:
        return all(e == 0 for e in self.exponents)

    @property
    def order(self) -> int:
        parts = [n // gcd(e, n) for n, e in zip(self.orders, self.exponents)]
        return lcm(*parts) if parts else 1

    def __repr__(self):
        return "chi" + repr(tuple(self.exponents))


@dataclass
class GroupAction:
    group: AbelianGroup
    field: NumberField
    dim: int
    generators: list[Matrix]

    def element(self, exponents) -> Matrix:
        m = Matrix.identity(self.field, self.dim)
        for g, e in zip(self.generators, exponents):
            if e:
                m = m * g ** e
        return m

    def exponent_tuples(self):
        tuples = [()]
        for n in self.group.orders:
            tuples = [t + (e,) for t in tuples for e in range(n)]
        return tuples

    def image_elements(self) -> list[tuple[tuple[int, ...], Matrix]]:
        """Distinct matrices in the image, keyed by the lexicographically
        first exponent tuple producing each."""
        if self.group.size > IMAGE_ENUM_LIMIT:
            raise TooLarge(
                f"group of size {self.group.size} exceeds the enumeration "
                f"limit {IMAGE_ENUM_LIMIT}")
        seen: dict[Matrix, tuple[int, ...]] = {}
        order = []
        for t in self.exponent_tuples():
            m = self.element(t)
            if m not in seen:
                seen[m] = t
                order.append((t, m))
        return order

    def __repr__(self):
        return f"{self.group} on {self.field}^{self.dim}"


@dataclass
class ValidationReport:
    violations: list[str] = dataclass_field(default_factory=list)
    image_order: int | None = None
    faithful: bool | None = None

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass
class EigenDecomposition:
    """Simultaneous eigenspace decomposition: (character, basis) pairs in
    lexicographic character order, zero eigenspaces omitted."""

    entries: list[tuple[Character, list[tuple]]]

    @property
    def dims(self) -> list[int]:
        return [len(basis) for _, basis in self.entries]


@dataclass
class IrreducibleFactor:
    basis: list[tuple]
    min_poly: UniPoly

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass
class IrreducibleDecomposition:
    factors: list[IrreducibleFactor]
    image_generator: Matrix
    image_order: int

    def multiplicities(self) -> list[tuple[UniPoly, int]]:
        """Isomorphism classes in first-appearance order with repeat counts;
        two factors are isomorphic exactly when their minimal polynomials
        coincide."""
        out: list[tuple[UniPoly, int]] = []
        for f in self.factors:
            for i, (p, c) in enumerate(out):
                if p == f.min_poly:
                    out[i] = (p, c + 1)
                    break
            else:
                out.append((f.min_poly, 1))
        return out


def validate_action(a: GroupAction) -> ValidationReport:
    """Check the structural invariants; on success also report the size of
    the image in GL(V) and whether the action is faithful."""
    report = ValidationReport()
    k = a.field
    if a.dim < 0:
        report.violations.append("dimension must be nonnegative")
        return report
    if len(a.generators) != len(a.group.orders):
        report.violations.append(
            f"expected {len(a.group.orders)} generator matrices, "
            f"got {len(a.generators)}")
        return report
    ident = Matrix.identity(k, a.dim)
    for i, (g, n) in enumerate(zip(a.generators, a.group.orders)):
        if not g.is_square() or g.nrows != a.dim:
            report.violations.append(
                f"generator {i} is not {a.dim}x{a.dim}")
            continue
        if g.det() == k.zero():
            report.violations.append(f"generator {i} is singular")
            continue
        if g ** n != ident:
            report.violations.append(
                f"generator {i} does not have order dividing {n}")
    for i in range(len(a.generators)):
        for j in range(i + 1, len(a.generators)):
            gi, gj = a.generators[i], a.generators[j]
            if (gi.is_square() and gj.is_square()
                    and gi.nrows == gj.nrows == a.dim
                    and gi * gj != gj * gi):
                report.violations.append(
                    f"generators {i} and {j} do not commute")
    if report.violations:
        return report
    report.image_order = len(a.image_elements())
    report.faithful = report.image_order == a.group.size
    return report


def require_valid(a: GroupAction) -> ValidationReport:
    report = validate_action(a)
    if not report.ok:
        raise ValidationError(report.violations)
    return report


def normalize_vector(v, k: NumberField):
    """Scale so the first nonzero coordinate is 1 (deterministic bases)."""
    for c in v:
        if c != k.zero():
            return tuple(x / c for x in v)
    return tuple(v)


def character_eigenspaces(a: GroupAction) -> EigenDecomposition:
    """Simultaneous eigenspaces of all generators, one entry per character
    with nonzero eigenspace, in lexicographic order on exponent tuples.
    Requires all exp(G)-th roots of unity in the base field."""
    k = a.field
    n_exp = a.group.exponent
    if not k.contains_nth_roots(n_exp):
        raise RootsOfUnityMissing(
            f"{k} lacks the {n_exp}-th roots of unity")
    require_valid(a)
    big_order = k.unit_root_order()
    zeta = k.unit_root_gen()
    prim = {n: zeta ** (big_order // n) for n in set(a.group.orders)}
    ident = Matrix.identity(k, a.dim)
    entries = []
    total = 0
    for exps in a.exponent_tuples():
        values = tuple(prim[n] ** e
                       for n, e in zip(a.group.orders, exps))
        rows = []
        for g, lam in zip(a.generators, values):
            rows.extend((g - ident.scale(lam)).rows)
        if rows:
            stacked = Matrix(k, rows)
            basis = [normalize_vector(v, k) for v in stacked.nullspace()]
        else:
            basis = [normalize_vector(v, k)
                     for v in ident.rows]  # trivial group: everything
        if not basis:
            continue
        chi = Character(a.group.orders, exps, values)
        entries.append((chi, basis))
        total += len(basis)
    if total != a.dim:
        raise ArithmeticError(
            f"eigenspace dimensions sum to {total}, expected {a.dim}")
    return EigenDecomposition(entries)


def cyclic_image_generator(a: GroupAction) -> tuple[Matrix, int]:
    """A generator of the image of G in GL(V) and the image order,
    when the image is cyclic; the lexicographically first element of
    maximal order is chosen."""
    elements = a.image_elements()
    m = len(elements)
    for _, mat in elements:
        if m == 1 or mat.multiplicative_order(bound=m) == m:
            return mat, m
    raise NonCyclicImage(
        f"image of {a.group} in GL_{a.dim} has order {m} but no element "
        "of that order")


def irreducible_decomposition(a: GroupAction) -> IrreducibleDecomposition:
    """Split V into invariant subspaces of dimension 1 or 2, one for each
    copy of an irreducible factor of the image generator's minimal
    polynomial. Needs a cyclic image; factors of degree > 2 over k are out
    of scope and raise UnsupportedDegree."""
    require_valid(a)
    k = a.field
    sigma, image_order = cyclic_image_generator(a)
    min_poly = sigma.minimal_polynomial()
    pieces = factor_unity_poly(min_poly, k, bound=max(64, image_order))
    factors: list[IrreducibleFactor] = []
    for f, _ in pieces:
        kernel = sigma.eval_poly(f).nullspace()
        if f.degree == 1:
            for v in kernel:
                factors.append(IrreducibleFactor(
                    [normalize_vector(v, k)], f))
            continue
        picked: list[tuple] = []
        for v in kernel:
            if picked:
                test = Matrix(k, picked + [v])
                if test.rank() == len(picked):
                    continue
            w = sigma.apply(v)
            factors.append(IrreducibleFactor(
                [normalize_vector(v, k), normalize_vector(w, k)], f))
            picked.extend([v, w])
    total = sum(f.dim for f in factors)
    if total != a.dim:
        raise ArithmeticError(
            f"invariant subspaces sum to dimension {total}, expected {a.dim}")
    # list factors by where they sit in V (leading coordinate of the first
    # basis vector), so block-diagonal inputs keep their block order
    factors.sort(key=lambda f: _leading_index(f.basis[0], k))
    return IrreducibleDecomposition(factors, sigma, image_order)


def _leading_index(v, k: NumberField) -> int:
    for i, c in enumerate(v):
        if c != k.zero():
            return i
    return len(v)


def faithful_factor(dec: IrreducibleDecomposition, a: GroupAction) -> int:
    """Index of the first factor on which the (prime-power cyclic) image
    acts faithfully. The restriction of the image generator to a factor
    with minimal polynomial f has order equal to the root order of f, so
    faithfulness is just that order matching the image order."""
    m = dec.image_order
    if is_prime_power(m) is None:
        raise NotPrimePower(f"image order {m} is not a prime power")
    for i, f in enumerate(dec.factors):
        if m == 1 or order_of_t_mod(f.min_poly, bound=m) == m:
            return i
    raise NoFaithfulFactor(
        f"no factor is acted on faithfully (image order {m}); "
        "this should be unreachable for prime-power cyclic images")


def restrict_action(a: GroupAction, basis: list[tuple]) -> GroupAction:
    """The action induced on the span of an invariant basis, written in
    that basis."""
    k = a.field
    if not basis:
        return GroupAction(a.group, k, 0, [
            Matrix.zeros(k, 0, 0) for _ in a.generators])
    cols = Matrix(k, basis).transpose()
    new_gens = []
    for g in a.generators:
        new_cols = []
        for v in basis:
            image = g.apply(v)
            coords = cols.solve(image)
            if coords is None:
                raise ValidationError(
                    ["basis does not span an invariant subspace"])
            new_cols.append(coords)
        new_gens.append(Matrix(k, new_cols).transpose())
    return GroupAction(a.group, k, len(basis), new_gens)
