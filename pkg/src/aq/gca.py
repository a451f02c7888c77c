"""Exact graded-commutative polynomial arithmetic over Q.

Generators carry a positive cohomological degree.  Odd-degree generators
anticommute (so their squares vanish); even-degree generators are central.
Quotients are taken by monomial ideals only, which covers truncated
polynomial algebras and sphere cohomologies without Groebner machinery.

All values are immutable and all operations are pure; coefficients are
`fractions.Fraction` throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

Scalar = Union[int, Fraction]


class DomainMismatchError(ValueError):
    """Operands mention generators that cannot belong to one algebra."""


class ContractViolation(ValueError):
    """An operation was fed data outside its stated contract."""


@dataclass(frozen=True)
class GeneratorSymbol:
    """A named generator of a free graded-commutative algebra."""

    name: str
    degree: int

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise ContractViolation(f"generator {self.name!r} must have degree >= 1")

    @property
    def is_odd(self) -> bool:
        return self.degree % 2 == 1

    @property
    def sort_key(self) -> tuple[int, str]:
        # canonical factor order: by (degree, name) ascending
        return (self.degree, self.name)

    def __repr__(self) -> str:
        return f"{self.name}[{self.degree}]"


def _check_one_algebra(symbols: Iterable[GeneratorSymbol]) -> None:
    # Names are unique within an algebra, so one name with two degrees
    # can only arise from mixing algebras.
    seen: dict[str, int] = {}
    for s in symbols:
        if seen.setdefault(s.name, s.degree) != s.degree:
            raise DomainMismatchError(
                f"generator name {s.name!r} appears with degrees "
                f"{seen[s.name]} and {s.degree}"
            )


@dataclass(frozen=True)
class Monomial:
    """A reduced word in canonical order, stored as (generator, exponent) pairs.

    Odd generators never carry an exponent above 1; their higher powers are
    the zero element and are never stored.
    """

    powers: tuple[tuple[GeneratorSymbol, int], ...]

    def __post_init__(self) -> None:
        keys = [g.sort_key for g, _ in self.powers]
        if keys != sorted(keys) or len(set(keys)) != len(keys):
            raise ContractViolation("monomial factors not in canonical order")
        for g, e in self.powers:
            if e < 1:
                raise ContractViolation("exponents must be positive")
            if g.is_odd and e > 1:
                raise ContractViolation(f"odd generator {g.name!r} squared is zero")
        _check_one_algebra(g for g, _ in self.powers)

    @property
    def degree(self) -> int:
        return sum(g.degree * e for g, e in self.powers)

    @property
    def word_length(self) -> int:
        return sum(e for _, e in self.powers)

    @property
    def is_unit(self) -> bool:
        return not self.powers

    def exponent(self, g: GeneratorSymbol) -> int:
        for h, e in self.powers:
            if h == g:
                return e
        return 0

    def divisible_by(self, other: "Monomial") -> bool:
        return all(self.exponent(g) >= e for g, e in other.powers)

    def __str__(self) -> str:
        if not self.powers:
            return "1"
        return "*".join(
            g.name if e == 1 else f"{g.name}^{e}" for g, e in self.powers
        )


UNIT = Monomial(())


def monomial(pairs: Mapping[GeneratorSymbol, int]) -> Monomial:
    """Build a monomial from an exponent mapping (canonicalizing the order)."""
    items = sorted(((g, e) for g, e in pairs.items() if e), key=lambda p: p[0].sort_key)
    return Monomial(tuple(items))


def _merge_count_odd_inversions(
    word: Sequence[GeneratorSymbol],
) -> tuple[list[GeneratorSymbol], int]:
    """Stable merge sort by canonical key, counting odd-odd inversions."""
    n = len(word)
    if n <= 1:
        return list(word), 0
    mid = n // 2
    left, tl = _merge_count_odd_inversions(word[:mid])
    right, tr = _merge_count_odd_inversions(word[mid:])
    # odd-degree suffix counts of the left run, used when a right element
    # jumps over the remaining left elements
    odd_suffix = [0] * (len(left) + 1)
    for i in range(len(left) - 1, -1, -1):
        odd_suffix[i] = odd_suffix[i + 1] + (1 if left[i].is_odd else 0)
    merged: list[GeneratorSymbol] = []
    count = tl + tr
    i = j = 0
    while i < len(left) and j < len(right):
        if right[j].sort_key < left[i].sort_key:
            if right[j].is_odd:
                count += odd_suffix[i]
            merged.append(right[j])
            j += 1
        else:
            merged.append(left[i])
            i += 1
    merged.extend(left[i:])
    merged.extend(right[j:])
    return merged, count


def canonical_monomial(
    word: Sequence[GeneratorSymbol],
) -> Optional[tuple[int, Monomial]]:
    """Sort a word into canonical order, tracking the Koszul sign.

    Returns ``(sign, monomial)`` with sign ``(-1)**t`` where ``t`` counts the
    odd-odd transpositions a stable sort performs, or ``None`` when an odd
    generator repeats (the word is the zero element).
    """
    _check_one_algebra(word)
    ordered, inversions = _merge_count_odd_inversions(word)
    pairs: list[tuple[GeneratorSymbol, int]] = []
    for g in ordered:
        if pairs and pairs[-1][0] == g:
            if g.is_odd:
                return None
            pairs[-1] = (g, pairs[-1][1] + 1)
        else:
            pairs.append((g, 1))
    sign = -1 if inversions % 2 else 1
    return sign, Monomial(tuple(pairs))


def factor_word(m: Monomial) -> tuple[GeneratorSymbol, ...]:
    """Expand a reduced monomial into its canonical-order word."""
    word: list[GeneratorSymbol] = []
    for g, e in m.powers:
        word.extend([g] * e)
    return tuple(word)


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by a minimal generating set."""

    generators: frozenset[Monomial]

    @staticmethod
    def of(monomials: Iterable[Monomial]) -> "MonomialIdeal":
        """Minimalize: drop any generator divisible by another."""
        mons = set(monomials)
        if any(m.is_unit for m in mons):
            return MonomialIdeal(frozenset({UNIT}))
        minimal = {
            m
            for m in mons
            if not any(o != m and m.divisible_by(o) for o in mons)
        }
        return MonomialIdeal(frozenset(minimal))

    def contains_monomial(self, m: Monomial) -> bool:
        return any(m.divisible_by(g) for g in self.generators)

    def __bool__(self) -> bool:
        return bool(self.generators)


EMPTY_IDEAL = MonomialIdeal(frozenset())


class GradedPolynomial:
    """A Q-linear combination of reduced monomials; zero coefficients dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Scalar] = ()):  # type: ignore[assignment]
        cleaned = {}
        for m, c in dict(terms).items():
            c = Fraction(c)
            if c:
                cleaned[m] = c
        _check_one_algebra(g for m in cleaned for g, _ in m.powers)
        self.terms: dict[Monomial, Fraction] = cleaned

    # -- constructors ------------------------------------------------
    @staticmethod
    def zero() -> "GradedPolynomial":
        return GradedPolynomial()

    @staticmethod
    def unit(c: Scalar = 1) -> "GradedPolynomial":
        return GradedPolynomial({UNIT: Fraction(c)})

    @staticmethod
    def of_gen(g: GeneratorSymbol, c: Scalar = 1) -> "GradedPolynomial":
        return GradedPolynomial({Monomial(((g, 1),)): Fraction(c)})

    @staticmethod
    def of_monomial(m: Monomial, c: Scalar = 1) -> "GradedPolynomial":
        return GradedPolynomial({m: Fraction(c)})

    # -- structure ---------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def degree(self) -> Optional[int]:
        """Common degree of all terms; None for the zero polynomial."""
        degs = {m.degree for m in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise ContractViolation(f"polynomial not homogeneous: degrees {sorted(degs)}")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len({m.degree for m in self.terms}) <= 1

    def min_word_length(self) -> Optional[int]:
        if not self.terms:
            return None
        return min(m.word_length for m in self.terms)

    def symbols(self) -> set[GeneratorSymbol]:
        return {g for m in self.terms for g, _ in m.powers}

    # -- arithmetic --------------------------------------------------
    def __add__(self, other: "GradedPolynomial") -> "GradedPolynomial":
        acc = dict(self.terms)
        for m, c in other.terms.items():
            acc[m] = acc.get(m, Fraction(0)) + c
        return GradedPolynomial(acc)

    def __sub__(self, other: "GradedPolynomial") -> "GradedPolynomial":
        return self + (-other)

    def __neg__(self) -> "GradedPolynomial":
        return GradedPolynomial({m: -c for m, c in self.terms.items()})

    def scale(self, c: Scalar) -> "GradedPolynomial":
        c = Fraction(c)
        return GradedPolynomial({m: c * k for m, k in self.terms.items()})

    def __rmul__(self, c: Scalar) -> "GradedPolynomial":
        return self.scale(c)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"GradedPolynomial({poly_str(self)})"


ZERO = GradedPolynomial.zero()


def reduce_mod_ideal(p: GradedPolynomial, ideal: MonomialIdeal) -> GradedPolynomial:
    """Delete every term divisible by an ideal generator.  Idempotent."""
    if not ideal:
        return p
    return GradedPolynomial(
        {m: c for m, c in p.terms.items() if not ideal.contains_monomial(m)}
    )


def mul(
    p: GradedPolynomial, q: GradedPolynomial, ideal: MonomialIdeal = EMPTY_IDEAL
) -> GradedPolynomial:
    """Graded-commutative product, reduced modulo the ideal."""
    acc: dict[Monomial, Fraction] = {}
    for m1, c1 in p.terms.items():
        w1 = factor_word(m1)
        for m2, c2 in q.terms.items():
            canon = canonical_monomial(w1 + factor_word(m2))
            if canon is None:
                continue
            sign, m = canon
            if ideal and ideal.contains_monomial(m):
                continue
            acc[m] = acc.get(m, Fraction(0)) + sign * c1 * c2
    return GradedPolynomial(acc)


def basis_of_degree(
    generators: Sequence[GeneratorSymbol], ideal: MonomialIdeal, k: int
) -> list[Monomial]:
    """All reduced monomials of total degree k, in graded-lex order.

    Deterministic: exponent vectors over the canonical generator order are
    listed lexicographically descending, so for Q[w]@Q[y] degree 4 the order
    is w^2, w*y, y^2.
    """
    if k < 0:
        return []
    gens = sorted(set(generators), key=lambda g: g.sort_key)
    out: list[Monomial] = []

    def rec(i: int, remaining: int, acc: list[tuple[GeneratorSymbol, int]]) -> None:
        if remaining == 0:
            m = Monomial(tuple(acc))
            if not ideal.contains_monomial(m):
                out.append(m)
            return
        if i == len(gens):
            return
        g = gens[i]
        cap = 1 if g.is_odd else remaining // g.degree
        for e in range(cap, -1, -1):  # descending: lex order comes out directly
            if e * g.degree > remaining:
                continue
            if e:
                acc.append((g, e))
            rec(i + 1, remaining - e * g.degree, acc)
            if e:
                acc.pop()

    rec(0, k, [])
    return out


# -- printing --------------------------------------------------------

def _coeff_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def monomial_sort_key(m: Monomial):
    """Total order on monomials: by degree, then graded-lex on exponents."""
    # Lex-descending over the canonical generator order, encoded so that
    # plain tuple comparison sorts w^2 before w*y before y^2.
    return (m.degree, tuple(sorted((g.sort_key, -e) for g, e in m.powers)))


def poly_str(p: GradedPolynomial) -> str:
    """Canonical rendering: terms in monomial order, exact coefficients.

    Examples: "0", "w^2 + 2*w*y", "-6*y", "1/2*x - y".
    """
    if p.is_zero:
        return "0"
    parts: list[str] = []
    for m in sorted(p.terms, key=monomial_sort_key):
        c = p.terms[m]
        mag = abs(c)
        if m.is_unit:
            body = _coeff_str(mag)
        elif mag == 1:
            body = str(m)
        else:
            body = f"{_coeff_str(mag)}*{m}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)
