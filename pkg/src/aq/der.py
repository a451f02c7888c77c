"""The derivation complex of a morphism and its Whitehead bracket.

A degree-n derivation along f: (LV, d) -> (B, d) is stored by its values on
the source generators; evaluation anywhere else goes through the twisted
Leibniz rule.  The complex differential is d o theta - (-1)^n theta o d,
and the bracket pairs two derivations through the word expansion of the
source differential with explicit Koszul signs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .cdga import CdgaPresentation, Morphism
from .gca import (
    ContractViolation,
    GeneratorSymbol,
    GradedPolynomial,
    Monomial,
    Scalar,
    factor_word,
    mul,
)


class ContextError(ValueError):
    """The derivation context is not well formed."""


@dataclass(frozen=True)
class DerContext:
    """Derivations along f from a Sullivan-free source into its target.

    With ``based`` set, values are restricted to the augmentation ideal of
    the target (positive-degree part), the complex modeling based maps.

    The chain-map property of f is *not* enforced here: the projective
    example family with a nonzero pure-w parameter fails it on the top
    generator, yet its complex is still well defined degreewise and is the
    point of the computation.  ``Morphism.validate`` reports the failure.
    """

    source: CdgaPresentation
    target: CdgaPresentation
    f: Morphism
    based: bool = False

    def __post_init__(self) -> None:
        if not self.source.is_sullivan_free:
            raise ContextError("derivation source must be Sullivan-free")
        if self.f.source is not self.source and self.f.source != self.source:
            raise ContextError("morphism source disagrees with context source")
        if self.f.target is not self.target and self.f.target != self.target:
            raise ContextError("morphism target disagrees with context target")
        for g in self.source.generators:
            img = self.f.images.get(g)
            if img is None:
                raise ContextError(f"morphism image missing for {g.name}")
            if not img.is_zero and (not img.is_homogeneous() or img.degree() != g.degree):
                raise ContextError(f"morphism image of {g.name} is not degree-preserving")

    @staticmethod
    def of(f: Morphism, based: bool = False) -> "DerContext":
        return DerContext(f.source, f.target, f, based)

    def value_basis(self, degree: int) -> list[Monomial]:
        """Target monomials available as derivation values in one degree."""
        if degree < 0:
            return []
        if self.based and degree == 0:
            return []
        return self.target.basis(degree)


@dataclass(frozen=True)
class Derivation:
    """A homogeneous derivation, determined by its generator values."""

    degree: int
    values: Mapping[GeneratorSymbol, GradedPolynomial] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "values",
            {g: p for g, p in self.values.items() if not p.is_zero},
        )
        for g, p in self.values.items():
            if not p.is_homogeneous() or p.degree() != g.degree + self.degree:
                raise ContractViolation(
                    f"value on {g.name} must be homogeneous of degree "
                    f"{g.degree + self.degree}"
                )

    def value(self, g: GeneratorSymbol) -> GradedPolynomial:
        return self.values.get(g, GradedPolynomial.zero())

    @property
    def is_zero(self) -> bool:
        return not self.values

    def __add__(self, other: "Derivation") -> "Derivation":
        assert self.degree == other.degree or self.is_zero or other.is_zero
        gens = set(self.values) | set(other.values)
        deg = other.degree if self.is_zero else self.degree
        return Derivation(deg, {g: self.value(g) + other.value(g) for g in gens})

    def scale(self, c: Scalar) -> "Derivation":
        return Derivation(self.degree, {g: p.scale(c) for g, p in self.values.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Derivation):
            return NotImplemented
        if self.is_zero and other.is_zero:
            return True
        return self.degree == other.degree and self.values == other.values

    def __repr__(self) -> str:
        from .gca import poly_str

        body = ", ".join(
            f"{g.name} -> {poly_str(p)}" for g, p in sorted(
                self.values.items(), key=lambda it: it[0].sort_key
            )
        )
        return f"Derivation[{self.degree}]({body or '0'})"


def zero_derivation(degree: int) -> Derivation:
    return Derivation(degree, {})


def _subword_image(ctx: DerContext, word: Sequence[GeneratorSymbol]) -> GradedPolynomial:
    """f applied to a subword; the empty subword maps to the unit."""
    acc = GradedPolynomial.unit()
    for v in word:
        acc = mul(acc, ctx.f.image_of_gen(v), ctx.target.relations)
        if acc.is_zero:
            break
    return acc


def eval_derivation(
    ctx: DerContext, theta: Derivation, p: GradedPolynomial
) -> GradedPolynomial:
    """Twisted-Leibniz extension of the generator values to any polynomial.

    On a word v_1...v_s the i-th summand replaces v_i by theta(v_i), maps
    the flanks through f, and carries the sign (-1)**(n * deg(prefix)).
    """
    n = theta.degree
    acc = GradedPolynomial.zero()
    for m, c in p.terms.items():
        word = factor_word(m)
        prefix_deg = 0
        for i, v in enumerate(word):
            tv = theta.value(v)
            if not tv.is_zero:
                sign = -1 if (n * prefix_deg) % 2 else 1
                term = _subword_image(ctx, word[:i])
                term = mul(term, tv, ctx.target.relations)
                term = mul(term, _subword_image(ctx, word[i + 1 :]), ctx.target.relations)
                acc = acc + term.scale(sign * c)
            prefix_deg += v.degree
    return ctx.target.reduce(acc)


def der_boundary(ctx: DerContext, theta: Derivation) -> Derivation:
    """Complex differential: d o theta - (-1)**n theta o d, degree n+1."""
    n = theta.degree
    sign = -1 if n % 2 else 1
    values: dict[GeneratorSymbol, GradedPolynomial] = {}
    for g in ctx.source.generators:
        lead = ctx.target.d(theta.value(g))
        trail = eval_derivation(ctx, theta, ctx.source.d_of_gen(g))
        values[g] = lead - trail.scale(sign)
    return Derivation(n + 1, values)


def der_basis(ctx: DerContext, n: int) -> list[Derivation]:
    """Basis derivations, one per (generator, value monomial) pair.

    Generators run in declaration order; value monomials in the canonical
    basis order of the target in the matching degree.  Based contexts skip
    the unit monomial.
    """
    out: list[Derivation] = []
    for g in ctx.source.generators:
        for b in ctx.value_basis(g.degree + n):
            out.append(Derivation(n, {g: GradedPolynomial.of_monomial(b)}))
    return out


def bracket(ctx: DerContext, phi: Derivation, psi: Derivation) -> Derivation:
    """Whitehead bracket of two derivations, of degree n + m + 1.

    For each source generator the differential is expanded into words; for
    every ordered pair of positions (i, j), i != j, the word is evaluated
    left to right with phi at slot i, psi at slot j and f elsewhere, signed
    by eps = |phi|*deg(prefix before i) + |psi|*deg(prefix before j), plus
    |phi||psi| when i < j, all times the overall (-1)**(n+m-1).
    """
    n, m = phi.degree, psi.degree
    outer = -1 if (n + m - 1) % 2 else 1
    values: dict[GeneratorSymbol, GradedPolynomial] = {}
    for g in ctx.source.generators:
        acc = GradedPolynomial.zero()
        for mono, c in ctx.source.d_of_gen(g).terms.items():
            word = factor_word(mono)
            s = len(word)
            if s < 2:
                continue
            prefix = [0] * (s + 1)
            for k, v in enumerate(word):
                prefix[k + 1] = prefix[k] + v.degree
            for i in range(s):
                pvi = phi.value(word[i])
                if pvi.is_zero:
                    continue
                for j in range(s):
                    if j == i:
                        continue
                    qvj = psi.value(word[j])
                    if qvj.is_zero:
                        continue
                    eps = n * prefix[i] + m * prefix[j] + (n * m if i < j else 0)
                    sign = -1 if eps % 2 else 1
                    term = GradedPolynomial.unit(c * sign * outer)
                    for k, v in enumerate(word):
                        if k == i:
                            factor = pvi
                        elif k == j:
                            factor = qvj
                        else:
                            factor = ctx.f.image_of_gen(v)
                        term = mul(term, factor, ctx.target.relations)
                        if term.is_zero:
                            break
                    acc = acc + term
        values[g] = ctx.target.reduce(acc)
    return Derivation(n + m + 1, values)


# -- coordinates -------------------------------------------------------

def derivation_coordinates(
    ctx: DerContext, theta: Derivation, basis: Sequence[Derivation]
) -> list[Fraction]:
    """Coordinates of a derivation in a der_basis list."""
    index: dict[tuple[GeneratorSymbol, Monomial], int] = {}
    for pos, b in enumerate(basis):
        (g, poly), = b.values.items()
        (mono, _), = poly.terms.items()
        index[(g, mono)] = pos
    coords = [Fraction(0)] * len(basis)
    for g, poly in theta.values.items():
        for mono, c in poly.terms.items():
            key = (g, mono)
            if key not in index:
                raise ContractViolation(
                    f"value {mono} on {g.name} is outside the complex basis"
                    + (" (based context requires augmentation-ideal values)"
                       if ctx.based else "")
                )
            coords[index[key]] = c
    return coords


def derivation_from_coordinates(
    degree: int, coords: Sequence[Scalar], basis: Sequence[Derivation]
) -> Derivation:
    acc = zero_derivation(degree)
    for c, b in zip(coords, basis):
        if c:
            acc = acc + b.scale(c)
    return acc
