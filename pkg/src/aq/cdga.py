"""CDGA presentations, morphisms and the structural invariants they carry.

A presentation is a finite generator list, a monomial relation ideal and a
differential given on generators.  The Leibniz rule extends the
differential to all polynomials; morphisms extend multiplicatively.

Also houses the built-in model library: sphere models, complex projective
spaces (finite and infinite), truncated polynomial algebras, tensor
products, and the parameterized projective-family morphism used by the
computational examples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .gca import (
    EMPTY_IDEAL,
    ContractViolation,
    GeneratorSymbol,
    GradedPolynomial,
    Monomial,
    MonomialIdeal,
    Scalar,
    basis_of_degree,
    canonical_monomial,
    factor_word,
    monomial,
    mul,
    poly_str,
    reduce_mod_ideal,
)

INFINITY = math.inf
IntOrInf = Union[int, float]


class UnsupportedPresentation(ValueError):
    """Operation requires a Sullivan-free presentation."""


class QuadraticPartNotNilpotent(ValueError):
    """The generator filtration induced by the quadratic part stalls."""


@dataclass(frozen=True)
class CdgaPresentation:
    generators: tuple[GeneratorSymbol, ...]
    relations: MonomialIdeal = EMPTY_IDEAL
    differential: Mapping[GeneratorSymbol, GradedPolynomial] = field(default_factory=dict)

    def __post_init__(self) -> None:
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ContractViolation(f"duplicate generator names in {names}")
        gens = set(self.generators)
        for g in self.differential:
            if g not in gens:
                raise ContractViolation(f"differential given on foreign generator {g!r}")

    # -- basic structure ----------------------------------------------
    def gen(self, name: str) -> GeneratorSymbol:
        for g in self.generators:
            if g.name == name:
                return g
        raise KeyError(name)

    def d_of_gen(self, g: GeneratorSymbol) -> GradedPolynomial:
        return self.differential.get(g, GradedPolynomial.zero())

    @property
    def is_sullivan_free(self) -> bool:
        return not self.relations

    @property
    def is_minimal(self) -> bool:
        """Sullivan-free with decomposable differential."""
        if not self.is_sullivan_free:
            return False
        return all(
            m.word_length >= 2
            for g in self.generators
            for m in self.d_of_gen(g).terms
        )

    def max_generator_degree(self) -> int:
        return max((g.degree for g in self.generators), default=0)

    def mul(self, p: GradedPolynomial, q: GradedPolynomial) -> GradedPolynomial:
        return mul(p, q, self.relations)

    def reduce(self, p: GradedPolynomial) -> GradedPolynomial:
        return reduce_mod_ideal(p, self.relations)

    def basis(self, k: int) -> list[Monomial]:
        return basis_of_degree(self.generators, self.relations, k)

    def is_finite_dimensional(self) -> bool:
        return all(
            g.is_odd or self._pure_power_cap(g) is not None for g in self.generators
        )

    def top_degree(self) -> IntOrInf:
        """Largest degree of a reduced basis monomial (INFINITY if unbounded)."""
        if not self.is_finite_dimensional():
            return INFINITY
        return max(
            (m.degree for m in self._all_reduced_monomials()), default=0
        )

    def _pure_power_cap(self, g: GeneratorSymbol) -> Optional[int]:
        # smallest k with g^k in the relation ideal
        caps = [
            r.powers[0][1]
            for r in self.relations.generators
            if len(r.powers) == 1 and r.powers[0][0] == g
        ]
        return min(caps) if caps else None

    def _all_reduced_monomials(self) -> list[Monomial]:
        assert self.is_finite_dimensional()
        mons = [Monomial(())]
        for g in sorted(self.generators, key=lambda s: s.sort_key):
            cap = 1 if g.is_odd else self._pure_power_cap(g) - 1  # type: ignore[operator]
            mons = [
                canon[1]
                for m in mons
                for e in range(cap + 1)
                for canon in [canonical_monomial(factor_word(m) + (g,) * e)]
                if canon is not None
            ]
        return [m for m in mons if not self.relations.contains_monomial(m)]

    # -- differential --------------------------------------------------
    def d(self, p: GradedPolynomial) -> GradedPolynomial:
        return extend_differential(self, p)

    def validate(self) -> list[str]:
        """Check grading, d^2 = 0, and stability of the relation ideal."""
        violations: list[str] = []
        for g in self.generators:
            dg = self.d_of_gen(g)
            if dg.is_zero:
                continue
            if not dg.is_homogeneous():
                violations.append(f"d({g.name}) is not homogeneous")
                continue
            if dg.degree() != g.degree + 1:
                violations.append(
                    f"d({g.name}) has degree {dg.degree()}, expected {g.degree + 1}"
                )
        if violations:
            return violations
        for g in self.generators:
            ddg = self.d(self.d_of_gen(g))
            if not ddg.is_zero:
                violations.append(f"d(d({g.name})) = {poly_str(ddg)} != 0")
        for r in self.relations.generators:
            dr = self.reduce(_d_monomial(self, r))
            if not dr.is_zero:
                violations.append(
                    f"d of relation {r} = {poly_str(dr)} escapes the ideal"
                )
        return violations


def _d_monomial(A: CdgaPresentation, m: Monomial) -> GradedPolynomial:
    # Leibniz over the canonical word; the input need not be reduced, which
    # lets validate() differentiate relation monomials directly.
    word = factor_word(m)
    acc = GradedPolynomial.zero()
    offset = 0
    for i, v in enumerate(word):
        dv = A.d_of_gen(v)
        if not dv.is_zero:
            sign = -1 if offset % 2 else 1
            pre = _word_poly(word[:i])
            post = _word_poly(word[i + 1 :])
            acc = acc + mul(mul(pre, dv, A.relations), post, A.relations).scale(sign)
        offset += v.degree
    return acc


def _word_poly(word: Sequence[GeneratorSymbol]) -> GradedPolynomial:
    canon = canonical_monomial(word)
    if canon is None:
        return GradedPolynomial.zero()
    sign, m = canon
    return GradedPolynomial.of_monomial(m, sign)


def extend_differential(A: CdgaPresentation, p: GradedPolynomial) -> GradedPolynomial:
    """The unique degree +1 Leibniz extension of the generator differential."""
    acc = GradedPolynomial.zero()
    for m, c in p.terms.items():
        acc = acc + _d_monomial(A, m).scale(c)
    return A.reduce(acc)


@dataclass(frozen=True)
class Morphism:
    """A degree-preserving multiplicative map given on source generators."""

    source: CdgaPresentation
    target: CdgaPresentation
    images: Mapping[GeneratorSymbol, GradedPolynomial]

    def image_of_gen(self, g: GeneratorSymbol) -> GradedPolynomial:
        if g not in self.images:
            raise ContractViolation(f"morphism has no image for generator {g!r}")
        return self.images[g]

    def apply(self, p: GradedPolynomial) -> GradedPolynomial:
        return apply_morphism(self, p)

    def validate(self) -> list[str]:
        """Degree preservation, chain-map property, relations to zero."""
        violations: list[str] = []
        for g in self.source.generators:
            if g not in self.images:
                violations.append(f"no image for generator {g.name}")
                continue
            img = self.images[g]
            if img.is_zero:
                continue
            if not img.is_homogeneous() or img.degree() != g.degree:
                violations.append(
                    f"image of {g.name} is not homogeneous of degree {g.degree}"
                )
        if violations:
            return violations
        for g in self.source.generators:
            lhs = self.apply(self.source.d_of_gen(g))
            rhs = self.target.d(self.image_of_gen(g))
            if lhs != rhs:
                violations.append(
                    f"not a chain map on {g.name}: f(d {g.name}) = {poly_str(lhs)}"
                    f" but d(f {g.name}) = {poly_str(rhs)}"
                )
        for r in self.source.relations.generators:
            img = self.apply(GradedPolynomial.of_monomial(r))
            if not img.is_zero:
                violations.append(f"relation {r} maps to {poly_str(img)} != 0")
        return violations


def apply_morphism(f: Morphism, p: GradedPolynomial) -> GradedPolynomial:
    """Multiplicative Q-linear extension of generator images, reduced in the target."""
    acc = GradedPolynomial.zero()
    for m, c in p.terms.items():
        term = GradedPolynomial.unit(c)
        for v in factor_word(m):
            term = mul(term, f.image_of_gen(v), f.target.relations)
            if term.is_zero:
                break
        acc = acc + term
    return f.target.reduce(acc)


def identity_morphism(A: CdgaPresentation) -> Morphism:
    return Morphism(A, A, {g: GradedPolynomial.of_gen(g) for g in A.generators})


def constant_morphism(source: CdgaPresentation, target: CdgaPresentation) -> Morphism:
    """Everything to zero; models the constant based map."""
    return Morphism(source, target, {g: GradedPolynomial.zero() for g in source.generators})


# -- structural invariants ---------------------------------------------

def quadratic_part(A: CdgaPresentation) -> dict[GeneratorSymbol, GradedPolynomial]:
    """Word-length-2 component of the differential on each generator."""
    if not A.is_sullivan_free:
        raise UnsupportedPresentation("quadratic part needs a Sullivan-free presentation")
    out: dict[GeneratorSymbol, GradedPolynomial] = {}
    for g in A.generators:
        dg = A.d_of_gen(g)
        out[g] = GradedPolynomial(
            {m: c for m, c in dg.terms.items() if m.word_length == 2}
        )
    return out


def omega(A: CdgaPresentation) -> IntOrInf:
    """Least word length appearing in the differential; INFINITY when d = 0.

    This is the largest w with d(V) inside the span of words of length >= w,
    the quantity the refined Whitehead-length bound divides by.
    """
    if not A.is_sullivan_free:
        raise UnsupportedPresentation("omega needs a Sullivan-free presentation")
    lengths = [
        m.word_length for g in A.generators for m in A.d_of_gen(g).terms
    ]
    return min(lengths) if lengths else INFINITY


def nil(A: CdgaPresentation) -> IntOrInf:
    """Product length of the underlying graded algebra (differential ignored).

    Infinite exactly when some even generator has no pure power among the
    relation monomials; otherwise the reduced-monomial basis is finite and
    nil is its maximal word length.
    """
    if not A.is_finite_dimensional():
        return INFINITY
    return max((m.word_length for m in A._all_reduced_monomials()), default=0)


def d1_depth(A: CdgaPresentation) -> int:
    """Length of the generator filtration induced by the quadratic part.

    V_0 collects generators with vanishing quadratic part; V_i those whose
    quadratic part only mentions generators of V_{i-1}.  Returns the first
    index at which the filtration reaches all generators.
    """
    d1 = quadratic_part(A)
    all_gens = set(A.generators)
    level = {g for g in A.generators if d1[g].is_zero}
    depth = 0
    while level != all_gens:
        nxt = {g for g in A.generators if d1[g].symbols() <= level}
        if nxt == level:
            raise QuadraticPartNotNilpotent(
                "quadratic part not nilpotent: filtration stalls at "
                + "{" + ", ".join(sorted(g.name for g in level)) + "}"
            )
        level = nxt
        depth += 1
    return depth


def wl_space(A: CdgaPresentation) -> int:
    """Whitehead length of the space presented by A: filtration depth plus one."""
    return d1_depth(A) + 1


@dataclass(frozen=True)
class StructuralInvariants:
    omega: IntOrInf
    nil: IntOrInf
    d1_depth: int
    wl_space: int


def structural_invariants(A: CdgaPresentation) -> StructuralInvariants:
    depth = d1_depth(A)
    return StructuralInvariants(
        omega=omega(A), nil=nil(A), d1_depth=depth, wl_space=depth + 1
    )


# -- model library -----------------------------------------------------

def sphere(n: int) -> CdgaPresentation:
    """Minimal model of the n-sphere: one odd generator, or the even pair."""
    if n < 1:
        raise ContractViolation("sphere dimension must be >= 1")
    e = GeneratorSymbol(f"e{n}", n)
    if n % 2 == 1:
        return CdgaPresentation((e,))
    e2 = GeneratorSymbol(f"e{2 * n - 1}", 2 * n - 1)
    square = mul(GradedPolynomial.of_gen(e), GradedPolynomial.of_gen(e))
    return CdgaPresentation((e, e2), EMPTY_IDEAL, {e2: square})


def cpn(n: int) -> CdgaPresentation:
    """Minimal model of the complex projective n-space."""
    if n < 1:
        raise ContractViolation("projective space index must be >= 1")
    x = GeneratorSymbol("x", 2)
    xp = GeneratorSymbol("xp", 2 * n + 1)
    power = GradedPolynomial.of_monomial(monomial({x: n + 1}))
    return CdgaPresentation((x, xp), EMPTY_IDEAL, {xp: power})


def cp_infinity(name: str = "z") -> CdgaPresentation:
    """Minimal model of the infinite complex projective space: one free even generator."""
    return CdgaPresentation((GeneratorSymbol(name, 2),))


def truncated_polynomial(name: str, degree: int, power: int) -> CdgaPresentation:
    """Q[g]/(g^(power+1)) with |g| = degree even; zero differential."""
    if degree % 2 or degree < 2 or power < 1:
        raise ContractViolation("truncated polynomial algebra needs an even generator and power >= 1")
    g = GeneratorSymbol(name, degree)
    rel = MonomialIdeal.of([monomial({g: power + 1})])
    return CdgaPresentation((g,), rel)


def tensor(A: CdgaPresentation, B: CdgaPresentation) -> CdgaPresentation:
    """Tensor product of presentations; generator names must not clash."""
    overlap = {g.name for g in A.generators} & {g.name for g in B.generators}
    if overlap:
        raise ContractViolation(f"tensor factors share generator names {sorted(overlap)}")
    diff: dict[GeneratorSymbol, GradedPolynomial] = {}
    diff.update(A.differential)
    diff.update(B.differential)
    return CdgaPresentation(
        A.generators + B.generators,
        MonomialIdeal.of(A.relations.generators | B.relations.generators),
        diff,
    )


def cp_map(
    n: int, m: int, q1: Scalar, q2: Scalar, q3: Scalar
) -> Morphism:
    """The parameterized morphism between projective-space product models.

    Source: Q[z] tensor the projective-n model; target: Q[w] tensor the
    truncated algebra Q[y]/(y^(m+1)).  Images: z to q1*w, x to q2*w + q3*y,
    xp to 0.  With q2 nonzero the chain-map identity fails on xp (the
    image of x^(n+1) keeps its pure-w term); validation reports this, and
    the derivation complex is still well defined degreewise.
    """
    if n < 1 or not 1 <= m < n:
        raise ContractViolation("cp_map needs n >= 1 and 1 <= m < n")
    source = tensor(cp_infinity("z"), cpn(n))
    target = tensor(cp_infinity("w"), truncated_polynomial("y", 2, m))
    z, x, xp = source.gen("z"), source.gen("x"), source.gen("xp")
    w, y = target.gen("w"), target.gen("y")
    images = {
        z: GradedPolynomial.of_gen(w, q1),
        x: GradedPolynomial.of_gen(w, q2) + GradedPolynomial.of_gen(y, q3),
        xp: GradedPolynomial.zero(),
    }
    return Morphism(source, target, images)
