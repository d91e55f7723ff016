"""A computable fragment of the Grothendieck ring of varieties.

Expressions are integer combinations of terms L^e * (multiset of atoms),
where L is the class of the affine line and the atoms are the two kinds of
irreducible classes the quotient constructions produce: quadratic etale
algebras Spec k(sqrt(d)) and conics C(a, b) given by a quaternion symbol.
The model is free: no relation between distinct normalized atoms is
assumed, so equality of normal forms proves equality in the Grothendieck
ring while inequality alone proves nothing (that is the job of the
stable-birational realization together with a rational-point witness).

The realization sb_realize kills L and keeps the surviving atoms; the
counting specializations send L to the field size, quadratic etale atoms
to 1 + chi(d), and conics to q + 1, giving an integer-valued ring
homomorphism used to cross-check every theorem-produced class.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction

from .errors import BadReduction, MixedBaseField, NotPulledBack
from .exact.field import NumberField
from .ntheory import (
    hilbert_symbol,
    is_prime,
    legendre,
    place_splits_in_quadratic,
    relevant_places,
    squarefree_part,
)


def _squarefree_int(x) -> int:
    s = squarefree_part(Fraction(x))
    return int(s)


@dataclass(frozen=True)
class Atom:
    kind: str              # "conic" or "etale"
    data: tuple[int, ...]  # (a, b) for conics, (d,) for etale atoms

    def render(self) -> str:
        if self.kind == "conic":
            a, b = self.data
            return f"C({a},{b})"
        return f"SpecQ(sqrt({self.data[0]}))"

    def __repr__(self):
        return self.render()


_SENTINEL = "￿"


class KExpr:
    """Normal-form expression: {(L-power, sorted atom tuple): coefficient}.
    Immutable by convention; all operations return new expressions."""

    __slots__ = ("base", "terms", "pullback_of")

    def __init__(self, base: NumberField, terms=None,
                 pullback_of: "KExpr | None" = None):
        clean: dict[tuple[int, tuple[Atom, ...]], int] = {}
        for (e, atoms), c in (terms or {}).items():
            if c == 0:
                continue
            key = (e, tuple(sorted(atoms, key=Atom.render)))
            clean[key] = clean.get(key, 0) + c
            if clean[key] == 0:
                del clean[key]
        self.base = base
        self.terms = clean
        self.pullback_of = pullback_of

    # -- constructors --------------------------------------------------------

    @staticmethod
    def scalar(base: NumberField, n: int) -> "KExpr":
        return KExpr(base, {(0, ()): n})

    @staticmethod
    def lefschetz(base: NumberField, e: int = 1) -> "KExpr":
        if e < 0:
            raise ValueError("negative powers of L are not in the ring")
        return KExpr(base, {(e, ()): 1})

    @staticmethod
    def of_atom(base: NumberField, atom: Atom) -> "KExpr":
        return KExpr(base, {(0, (atom,)): 1})

    # -- ring operations -----------------------------------------------------

    def _coerce(self, other) -> "KExpr":
        if isinstance(other, int):
            return KExpr.scalar(self.base, other)
        if isinstance(other, KExpr):
            if other.base.key != self.base.key:
                raise MixedBaseField(
                    f"expressions over {self.base} and {other.base}")
            return other
        raise TypeError(f"cannot combine KExpr with {other!r}")

    def __add__(self, other) -> "KExpr":
        other = self._coerce(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return KExpr(self.base, out)

    __radd__ = __add__

    def __neg__(self) -> "KExpr":
        return KExpr(self.base, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "KExpr":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "KExpr":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "KExpr":
        other = self._coerce(other)
        out: dict[tuple[int, tuple[Atom, ...]], int] = {}
        for (e1, a1), c1 in self.terms.items():
            for (e2, a2), c2 in other.terms.items():
                key = (e1 + e2, a1 + a2)
                # the KExpr constructor re-sorts atom tuples
                out[key] = out.get(key, 0) + c1 * c2
        result = KExpr(self.base, out)
        # multiplying by a literal 1 preserves the pullback bookkeeping
        if self.pullback_of is not None and other.is_one():
            result.pullback_of = self.pullback_of
        elif other.pullback_of is not None and self.is_one():
            result.pullback_of = other.pullback_of
        return result

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "KExpr":
        if n < 0:
            raise ValueError("negative powers are not in the ring")
        result = KExpr.scalar(self.base, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0, ()): 1}

    def atoms(self) -> list[Atom]:
        """Distinct atoms, in canonical order."""
        seen: dict[Atom, None] = {}
        for (_, atoms) in self.terms:
            for a in atoms:
                seen.setdefault(a, None)
        return sorted(seen, key=Atom.render)

    def is_l_polynomial(self) -> bool:
        return all(not atoms for (_, atoms) in self.terms)

    # -- identity ---------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = KExpr.scalar(self.base, other)
        if not isinstance(other, KExpr):
            return NotImplemented
        return self.base.key == other.base.key and self.terms == other.terms

    def __hash__(self):
        return hash((self.base.key, frozenset(self.terms.items())))

    def render(self) -> str:
        """Canonical textual form: terms in descending L-power, then
        lexicographic atom order with longer atom lists first."""
        if not self.terms:
            return "0"

        def sort_key(item):
            (e, atoms), _ = item
            return (-e, tuple(a.render() for a in atoms) + (_SENTINEL,))

        parts = []
        for (e, atoms), c in sorted(self.terms.items(), key=sort_key):
            body = str(abs(c))
            if e == 1:
                body += "*L"
            elif e > 1:
                body += f"*L^{e}"
            for a in atoms:
                body += f"*{a.render()}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"<{self.render()} over {self.base}>"


# -- atom factories -------------------------------------------------------------

def conic_class(base: NumberField, a, b) -> KExpr:
    """The class of the conic a x^2 + b y^2 = z^2 as a single atom; entries
    are reduced to squarefree integers and sorted, since the symbol is
    symmetric and scaling by squares is an isomorphism. No splitting is
    attempted here; normalize() does that."""
    a, b = _squarefree_int(a), _squarefree_int(b)
    if a == 0 or b == 0:
        raise ValueError("conic symbol entries must be nonzero")
    a, b = sorted((a, b))
    return KExpr.of_atom(base, Atom("conic", (a, b)))


def etale_class(base: NumberField, d) -> KExpr:
    """The class of Spec base(sqrt(d)). A square d (the trivial case) is
    the split etale algebra, i.e. the constant 2."""
    d = _squarefree_int(d)
    if d == 0:
        raise ValueError("etale discriminant must be nonzero")
    if d == 1:
        return KExpr.scalar(base, 2)
    return KExpr.of_atom(base, Atom("etale", (d,)))


def standard_class(base: NumberField, name: str, n: int = 0) -> KExpr:
    """The textbook classes: affine n -> L^n, projective n -> 1+L+...+L^n,
    gm -> L-1, point -> 1."""
    if name == "point":
        return KExpr.scalar(base, 1)
    if name == "gm":
        return KExpr.lefschetz(base) - 1
    if n < 0:
        raise ValueError("need n >= 0")
    if name == "affine":
        return KExpr.lefschetz(base, n) if n else KExpr.scalar(base, 1)
    if name == "projective":
        return KExpr(base, {(e, ()): 1 for e in range(n + 1)})
    raise ValueError(f"unknown standard class {name!r}")


# -- derivation traces ------------------------------------------------------------

@dataclass
class TraceStep:
    rule: str
    anchor: str
    before: KExpr
    after: KExpr


@dataclass
class DerivationTrace:
    steps: list[TraceStep] = dataclass_field(default_factory=list)
    flags: list[str] = dataclass_field(default_factory=list)

    def add(self, rule: str, anchor: str, before: KExpr, after: KExpr):
        if self.steps and self.steps[-1].after != before:
            raise ValueError(
                f"trace steps do not chain at rule {rule!r}")
        self.steps.append(TraceStep(rule, anchor, before, after))

    def concat(self, other: "DerivationTrace"):
        for s in other.steps:
            self.add(s.rule, s.anchor, s.before, s.after)
        self.flags.extend(other.flags)

    def validate(self):
        for i in range(len(self.steps) - 1):
            if self.steps[i].after != self.steps[i + 1].before:
                raise ValueError(f"trace breaks between steps {i} and {i+1}")

    def format_steps(self) -> list[str]:
        out = []
        for s in self.steps:
            out.append(f"{s.rule} [{s.anchor}]: "
                       f"{s.before.render()} => {s.after.render()}")
        for f in self.flags:
            out.append(f"note: {f}")
        return out


# -- normalization -----------------------------------------------------------------

def conic_split_over_q(a: int, b: int) -> bool:
    """Whether the conic a x^2 + b y^2 = z^2 has a rational point, decided
    by Hilbert symbols at the relevant places."""
    return all(hilbert_symbol(a, b, v) == 1 for v in relevant_places(a, b))


def default_facts(base: NumberField):
    """The built-in solvability oracle: decisive over Q, silent elsewhere."""
    if base.kind == "rational":
        return lambda a, b: conic_split_over_q(a, b)
    return lambda a, b: None


def substitute_atom(x: KExpr, atom: Atom, replacement: KExpr) -> KExpr:
    """Replace every occurrence of an atom (with multiplicity) by an
    expression over the same base."""
    result = KExpr(x.base)
    for (e, atoms), c in x.terms.items():
        kept = tuple(a for a in atoms if a != atom)
        count = len(atoms) - len(kept)
        term = KExpr(x.base, {(e, kept): c})
        if count:
            term = term * replacement ** count
        result = result + term
    return result


def normalize(x: KExpr, facts=None) -> tuple[KExpr, DerivationTrace]:
    """Rewrite split conics to 1 + L and square-discriminant etale atoms
    to 2; collect terms. A conic whose solvability the oracle cannot
    decide is left in place and noted in the trace flags."""
    if facts is None:
        facts = default_facts(x.base)
    trace = DerivationTrace()
    current = x
    for atom in x.atoms():
        if atom.kind == "etale":
            if _squarefree_int(atom.data[0]) == 1:
                after = substitute_atom(
                    current, atom, KExpr.scalar(x.base, 2))
                trace.add("rewrite-square-etale", "etale-normalization",
                          current, after)
                current = after
        else:
            a, b = atom.data
            verdict = facts(a, b)
            if verdict is True:
                one_plus_l = standard_class(x.base, "projective", 1)
                after = substitute_atom(current, atom, one_plus_l)
                trace.add("rewrite-split-conic", "claim-2.1",
                          current, after)
                current = after
            elif verdict is None:
                trace.flags.append(
                    f"solvability of {atom.render()} over {x.base} unknown")
    return current, trace


# -- the stable-birational realization -----------------------------------------------

class SBExpr:
    """Image of the realization that kills L: an integer combination of
    multisets of surviving atoms; the empty multiset is the point class."""

    __slots__ = ("base", "terms")

    def __init__(self, base: NumberField, terms=None):
        clean: dict[tuple[Atom, ...], int] = {}
        for atoms, c in (terms or {}).items():
            if c == 0:
                continue
            key = tuple(sorted(atoms, key=Atom.render))
            clean[key] = clean.get(key, 0) + c
            if clean[key] == 0:
                del clean[key]
        self.base = base
        self.terms = clean

    def __add__(self, other: "SBExpr") -> "SBExpr":
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return SBExpr(self.base, out)

    def __neg__(self) -> "SBExpr":
        return SBExpr(self.base, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "SBExpr") -> "SBExpr":
        return self + (-other)

    def __mul__(self, other: "SBExpr") -> "SBExpr":
        out: dict[tuple[Atom, ...], int] = {}
        for a1, c1 in self.terms.items():
            for a2, c2 in other.terms.items():
                key = a1 + a2
                out[key] = out.get(key, 0) + c1 * c2
        return SBExpr(self.base, out)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (isinstance(other, SBExpr)
                and self.base.key == other.base.key
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.base.key, frozenset(self.terms.items())))

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for atoms, c in sorted(
                self.terms.items(),
                key=lambda kv: tuple(a.render() for a in kv[0]) + (_SENTINEL,)):
            body = str(abs(c))
            for a in atoms:
                body += f"*[{a.render()}]"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"<SB {self.render()}>"


def sb_realize(x: KExpr) -> SBExpr:
    """The ring map to the stable-birational group ring: L goes to 0, so
    only L-degree-0 terms survive; their atom multisets carry over."""
    terms = {atoms: c for (e, atoms), c in x.terms.items() if e == 0}
    return SBExpr(x.base, terms)


# -- counting specializations ----------------------------------------------------------

@dataclass
class SpecializationContext:
    """Reduction at an odd prime p; records the good-reduction facts the
    specialization relied on."""

    p: int
    assumptions: list[str] = dataclass_field(default_factory=list)

    def __post_init__(self):
        if self.p == 2 or not is_prime(self.p):
            raise ValueError(f"specialization prime must be odd, got {self.p}")


def _check_reduction(atom: Atom, p: int, assumptions: list[str]):
    bad = 2
    for v in atom.data:
        bad *= v
    if bad % p == 0:
        raise BadReduction(
            f"{atom.render()} has bad reduction at p={p}")
    assumptions.append(f"p={p} is good for {atom.render()}")


def specialize_count(x: KExpr, ctx: SpecializationContext) -> int:
    """Count points of the specialized class over F_p: L -> p, quadratic
    etale atoms -> 1 + (d|p), conics -> p + 1 (smooth conics over finite
    fields always split)."""
    return _specialize(x, ctx.p, 1, ctx.assumptions)


def specialize_count_prime_power(x: KExpr, p: int, f: int) -> int:
    """The same specialization evaluated over F_q with q = p^f; the
    quadratic character of d becomes (d|p)^f."""
    if p == 2 or not is_prime(p) or f < 1:
        raise ValueError(f"need an odd prime power, got {p}^{f}")
    return _specialize(x, p, f, [])


def _specialize(x: KExpr, p: int, f: int, assumptions: list[str]) -> int:
    q = p ** f
    total = 0
    for (e, atoms), c in x.terms.items():
        val = c * q ** e
        for atom in atoms:
            _check_reduction(atom, p, assumptions)
            if atom.kind == "etale":
                val *= 1 + legendre(atom.data[0], p) ** f
            else:
                val *= q + 1
        total += val
    return total


# -- scalar extension and restriction ---------------------------------------------------

def extend_scalars(x: KExpr, big: NumberField) -> KExpr:
    """Base change along Q -> Q(sqrt(e)): etale atoms whose discriminant
    becomes a square split into 2, conics split into 1 + L exactly when
    every ramified place of their symbol is non-split in the extension.
    The input is retained on the result for restrict_scalars."""
    if x.base.kind != "rational":
        raise MixedBaseField("extend_scalars starts from Q")
    if big.kind != "quadratic":
        raise MixedBaseField(f"extension field {big} is not quadratic over Q")
    e = big.key[1]
    result = KExpr(big)
    for (pw, atoms), c in x.terms.items():
        term = KExpr(big, {(pw, ()): c})
        for atom in atoms:
            if atom.kind == "etale":
                d = atom.data[0]
                if d == e or _squarefree_int(d * e) == 1:
                    image = KExpr.scalar(big, 2)
                else:
                    image = KExpr.of_atom(big, atom)
            else:
                a, b = atom.data
                ramified = [v for v in relevant_places(a, b)
                            if hilbert_symbol(a, b, v) == -1]
                if all(not place_splits_in_quadratic(e, v) for v in ramified):
                    image = standard_class(big, "projective", 1)
                else:
                    image = KExpr.of_atom(big, atom)
            term = term * image
        result = result + term
    result.pullback_of = x
    return result


def restrict_scalars(x: KExpr, big: NumberField) -> KExpr:
    """The projection formula for a class pulled back from Q: push the
    retained preimage forward by multiplying with the class of Spec of the
    quadratic algebra. General pushforward is out of scope."""
    if x.pullback_of is None:
        raise NotPulledBack(
            "restrict_scalars needs a class produced by extend_scalars")
    if big.kind != "quadratic":
        raise MixedBaseField(f"extension field {big} is not quadratic over Q")
    e = big.key[1]
    return x.pullback_of * etale_class(x.pullback_of.base, e)
