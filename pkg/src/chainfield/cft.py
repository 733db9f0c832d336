"""Chain field theories in trivialised normal form.

Every object is sent to the standard line, so a theory of degree ``k``
(morphisms are k-chains, objects (k-1)-cycles) is determined by the phase
its functor assigns to each k-cell, extended linearly, together with its
curvature (k+1)-cochain. Isomorphism is decided by producing an explicit
natural transformation: a homomorphism ``h`` on (k-1)-cycles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .chains import (
    Chain,
    DegreeError,
    NotACycleError,
    _subquotient,
    boundary,
    group_string,
    is_cycle,
)
from .characters import (
    DifferentialCharacter,
    InvalidCharacterError,
    _phase_on,
    flat_character,
    lift_values,
    validate,
)
from .complexes import Complex
from .forms import Phase, RationalCochain, coboundary, exp_pairing, integer_periods, is_closed


class ChainFieldTheory:
    __slots__ = ("complex", "degree", "lift", "curvature")

    def __init__(self, complex: Complex, degree: int, lift: Sequence, curvature: RationalCochain):
        if degree < 0:
            raise DegreeError(f"negative theory degree {degree}")
        if len(lift) != complex.n_cells(degree):
            raise DegreeError(f"lift has {len(lift)} entries for {complex.n_cells(degree)} cells")
        if curvature.degree != degree + 1 or curvature.complex != complex:
            raise DegreeError(f"curvature must be a degree-{degree + 1} cochain on the same complex")
        self.complex = complex
        self.degree = degree
        self.lift = tuple(Phase(p) for p in lift)
        self.curvature = curvature

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainFieldTheory):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.lift == other.lift
            and self.curvature == other.curvature
            and self.complex == other.complex
        )

    def __hash__(self):
        return hash((self.degree, self.lift))

    def __repr__(self) -> str:
        lift = ", ".join(f"{self.complex.label(self.degree, i)}: {p}" for i, p in enumerate(self.lift))
        return f"ChainFieldTheory[{self.degree}]({{{lift}}}, curvature={self.curvature!r})"


@dataclass(frozen=True)
class IsoWitness:
    """Phases of ``h`` on the deterministic basis of (degree-1)-cycles."""

    complex: Complex
    degree: int
    phases: tuple

    def evaluate(self, gamma: Chain) -> Phase:
        if gamma.degree != self.degree:
            raise DegreeError(f"witness is defined on degree-{self.degree} cycles")
        if not is_cycle(gamma):
            raise NotACycleError(f"{gamma!r} is not a cycle")
        coords = _subquotient(self.complex, self.degree).coordinates(gamma.to_vector())
        return _phase_on(self.phases, coords)


def _same(E: ChainFieldTheory, F: ChainFieldTheory):
    if E.degree != F.degree or E.complex != F.complex:
        raise DegreeError("theories live on different complexes or degrees")


def smoothness_violations(E: ChainFieldTheory) -> list:
    """Violations of ``E(boundary b) = c(b)``, closedness and integrality."""
    K, k = E.complex, E.degree
    out = []
    if not is_closed(E.curvature):
        out.append("curvature is not closed")
    elif not integer_periods(E.curvature):
        out.append("curvature has a non-integer period")
    for j in range(K.n_cells(k + 1)):
        beta = Chain(K, k + 1, {j: 1})
        lhs = apply(E, boundary(beta))
        rhs = exp_pairing(E.curvature, beta)
        if lhs != rhs:
            out.append(f"E(boundary {K.label(k + 1, j)}) = {lhs} but curvature gives {rhs}")
    return out


def apply(E: ChainFieldTheory, sigma: Chain) -> Phase:
    """The phase by which ``E(sigma)`` acts on the standard line."""
    if sigma.degree != E.degree:
        raise DegreeError(f"degree-{E.degree} theory applied to a degree-{sigma.degree} chain")
    return Phase(sum((c * E.lift[i].value for i, c in sigma.coeffs.items()), Fraction(0)))


def holonomy(E: ChainFieldTheory, sigma: Chain) -> Phase:
    if sigma.degree != E.degree:
        raise DegreeError(f"degree-{E.degree} theory has no holonomy on degree-{sigma.degree} chains")
    if not is_cycle(sigma):
        raise NotACycleError(f"{sigma!r} is not a cycle")
    return apply(E, sigma)


def trivial_theory(K: Complex, degree: int) -> ChainFieldTheory:
    return ChainFieldTheory(K, degree, [Phase(0)] * K.n_cells(degree), RationalCochain.zero(K, degree + 1))


def cft_from_form(omega: RationalCochain) -> ChainFieldTheory:
    return ChainFieldTheory(omega.complex, omega.degree, omega.to_vector(), coboundary(omega))


def cft_from_character(f: DifferentialCharacter, complement_phases: Optional[Sequence] = None) -> ChainFieldTheory:
    """Theory whose functor is a lift of ``f`` from cycles to all chains.

    ``complement_phases`` picks the lift's values on the complement of the
    cycles (zero by default); all choices give isomorphic theories.
    """
    violations = validate(f)
    if violations:
        raise InvalidCharacterError(violations)
    return ChainFieldTheory(f.complex, f.degree, lift_values(f, complement_phases), f.curvature)


def holonomy_character(E: ChainFieldTheory) -> DifferentialCharacter:
    basis = _subquotient(E.complex, E.degree).basis
    phases = [apply(E, Chain.from_vector(E.complex, E.degree, z)) for z in basis]
    return DifferentialCharacter(E.complex, E.degree, phases, E.curvature)


def star(E: ChainFieldTheory, F: ChainFieldTheory) -> ChainFieldTheory:
    _same(E, F)
    return ChainFieldTheory(
        E.complex, E.degree, [a + b for a, b in zip(E.lift, F.lift)], E.curvature + F.curvature
    )


def invert(E: ChainFieldTheory) -> ChainFieldTheory:
    return ChainFieldTheory(E.complex, E.degree, [-a for a in E.lift], -E.curvature)


def is_flat(E: ChainFieldTheory) -> bool:
    return E.curvature.is_zero()


def is_deformation_invariant(E: ChainFieldTheory) -> bool:
    """True when ``E`` kills every boundary of a (k+1)-cell.

    Equivalently ``E(s1) = E(s2)`` whenever ``s2 - s1`` bounds. This is
    weaker than flatness: an integer-valued nonzero curvature also passes.
    """
    K, k = E.complex, E.degree
    for j in range(K.n_cells(k + 1)):
        if apply(E, boundary(Chain(K, k + 1, {j: 1}))):
            return False
    return True


def non_isomorphism_reason(E: ChainFieldTheory, F: ChainFieldTheory) -> Optional[str]:
    """Why ``E`` and ``F`` cannot be isomorphic, or None if they are."""
    _same(E, F)
    K, k = E.complex, E.degree
    for i in sorted(set(E.curvature.values) | set(F.curvature.values)):
        if E.curvature(i) != F.curvature(i):
            return f"curvature differs on cell {K.label(k + 1, i)}"
    for idx, z in enumerate(_subquotient(K, k).basis):
        sigma = Chain.from_vector(K, k, z)
        if apply(E, sigma) != apply(F, sigma):
            return f"holonomy differs on basis cycle {idx}"
    return None


def isomorphism_witness(E: ChainFieldTheory, F: ChainFieldTheory) -> Optional[IsoWitness]:
    """A natural isomorphism ``E -> F`` given by ``h`` on (k-1)-cycles.

    The difference ``g = F - E`` of the two lifts kills every k-cycle, so it
    factors through the (k-1)-boundaries; ``h`` extends it to all
    (k-1)-cycles. The defining identity ``h(boundary s) = g(s)`` is checked
    on every k-cell before returning.
    """
    if non_isomorphism_reason(E, F) is not None:
        return None
    K, k = E.complex, E.degree
    g = [b - a for a, b in zip(E.lift, F.lift)]
    sq = _subquotient(K, k - 1)
    h = [Phase(v) for v in sq.divide([p.value for p in g])]
    witness = IsoWitness(K, k - 1, tuple(h))
    if not witness_holds(witness, E, F):
        raise RuntimeError("constructed isomorphism witness fails its defining identity")
    return witness


def witness_holds(witness: IsoWitness, E: ChainFieldTheory, F: ChainFieldTheory) -> bool:
    """``h(boundary s) = F(s) - E(s)`` for every k-cell ``s``."""
    _same(E, F)
    K, k = E.complex, E.degree
    if witness.degree != k - 1 or len(witness.phases) != _subquotient(K, k - 1).rank:
        return False
    for j in range(K.n_cells(k)):
        sigma = Chain(K, k, {j: 1})
        if k == 0:
            lhs = Phase(0)
        else:
            lhs = witness.evaluate(boundary(sigma))
        if lhs != F.lift[j] - E.lift[j]:
            return False
    return True


@dataclass(frozen=True)
class FlatGenerator:
    """One cyclic factor of the flat classification.

    ``order`` is 0 for a free factor, whose holonomy is a sample value
    standing in for an arbitrary U(1) parameter.
    """

    order: int
    cycle: Chain
    holonomy: Phase
    theory: ChainFieldTheory


@dataclass(frozen=True)
class FlatClassification:
    degree: int
    betti: int
    torsion: tuple
    generators: tuple

    def group(self) -> str:
        """The group of flat theories up to isomorphism, e.g. ``U(1) x Z/2``."""
        parts = []
        if self.betti:
            parts.append("U(1)" if self.betti == 1 else f"U(1)^{self.betti}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " x ".join(parts) if parts else "0"

    def homology(self) -> str:
        return group_string(self.betti, self.torsion)


FREE_SAMPLE = Fraction(1, 3)


def classify_flat(K: Complex, degree: int, free_sample: Fraction = FREE_SAMPLE) -> FlatClassification:
    """Flat theories of the given degree: ``Hom(H_degree, U(1))`` with generators.

    Each torsion factor of order ``d`` gets a theory with holonomy ``1/d`` on
    its generating cycle; each free factor gets one with holonomy
    ``free_sample``.
    """
    if not 0 <= degree <= K.top_dim:
        raise DegreeError(f"degree {degree} outside 0..{K.top_dim}")
    sq = _subquotient(K, degree)
    orders = sq.orders
    cycles = [Chain.from_vector(K, degree, v) for v in sq.generators]
    gens = []
    for i, d in enumerate(orders):
        target = Phase(Fraction(1, d)) if d else Phase(free_sample)
        phi = [Phase(0)] * len(orders)
        phi[i] = target
        E = cft_from_character(flat_character(K, degree, phi))
        if not is_flat(E) or holonomy(E, cycles[i]) != target:
            raise RuntimeError(f"generator {i} does not have holonomy {target}")
        gens.append(FlatGenerator(d, cycles[i], target, E))
    return FlatClassification(degree, sq.betti, tuple(sq.torsion), tuple(gens))
