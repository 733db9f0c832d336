"""Cheeger-Simons differential characters on a finite complex.

A degree-``k`` character is a homomorphism ``f`` from the k-cycles to U(1)
together with a closed integer-period (k+1)-cochain ``c`` such that
``f(boundary b) = c(b)`` mod 1 for every (k+1)-chain ``b``. The k-cycles are
free, so ``f`` is stored by its values on the deterministic cycle basis.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .chains import (
    Chain,
    DegreeError,
    HomologyClass,
    NotACycleError,
    _subquotient,
    boundary,
    cohomology_integer,
    is_cycle,
)
from .complexes import Complex
from .forms import Phase, RationalCochain, coboundary, exp_pairing, integrate, is_closed, integer_periods


class InvalidCharacterError(ValueError):
    """A character (or theory) violates its defining relations."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class DifferentialCharacter:
    __slots__ = ("complex", "degree", "basis_phases", "curvature")

    def __init__(self, complex: Complex, degree: int, basis_phases: Sequence, curvature: RationalCochain):
        if degree < 0:
            raise DegreeError(f"negative character degree {degree}")
        if curvature.degree != degree + 1 or curvature.complex != complex:
            raise DegreeError(f"curvature must be a degree-{degree + 1} cochain on the same complex")
        self.complex = complex
        self.degree = degree
        self.basis_phases = tuple(Phase(p) for p in basis_phases)
        self.curvature = curvature

    def __eq__(self, other) -> bool:
        if not isinstance(other, DifferentialCharacter):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.basis_phases == other.basis_phases
            and self.curvature == other.curvature
            and self.complex == other.complex
        )

    def __hash__(self):
        return hash((self.degree, self.basis_phases))

    def __repr__(self) -> str:
        phases = ", ".join(map(str, self.basis_phases))
        return f"DifferentialCharacter[{self.degree}]([{phases}], curvature={self.curvature!r})"


def _phase_on(phases: Sequence[Phase], coords: Sequence[int]) -> Phase:
    total = Fraction(0)
    for c, p in zip(coords, phases):
        if c:
            total += c * p.value
    return Phase(total)


def evaluate(f: DifferentialCharacter, sigma: Chain) -> Phase:
    if sigma.degree != f.degree:
        raise DegreeError(f"degree-{f.degree} character evaluated on a degree-{sigma.degree} chain")
    if not is_cycle(sigma):
        raise NotACycleError(f"{sigma!r} is not a cycle")
    coords = _subquotient(f.complex, f.degree).coordinates(sigma.to_vector())
    return _phase_on(f.basis_phases, coords)


def validate(f: DifferentialCharacter) -> list:
    """Every violated defining relation, as readable strings; empty when valid."""
    K, k = f.complex, f.degree
    sq = _subquotient(K, k)
    if len(f.basis_phases) != sq.rank:
        return [f"expected {sq.rank} basis phases, got {len(f.basis_phases)}"]
    out = []
    c = f.curvature
    dc = coboundary(c)
    for i, v in sorted(dc.values.items()):
        out.append(f"curvature not closed: d c = {v} on {K.label(k + 2, i)}")
    if not dc.values and not integer_periods(c):
        out.append("curvature has a non-integer period")
    for j in range(K.n_cells(k + 1)):
        beta = Chain(K, k + 1, {j: 1})
        lhs = evaluate(f, boundary(beta))
        rhs = exp_pairing(c, beta)
        if lhs != rhs:
            out.append(f"f(boundary {K.label(k + 1, j)}) = {lhs} but curvature gives {rhs}")
    return out


def trivial_character(K: Complex, degree: int) -> DifferentialCharacter:
    n = _subquotient(K, degree).rank
    return DifferentialCharacter(K, degree, [Phase(0)] * n, RationalCochain.zero(K, degree + 1))


def character_from_form(omega: RationalCochain) -> DifferentialCharacter:
    K, k = omega.complex, omega.degree
    phases = [exp_pairing(omega, Chain.from_vector(K, k, z)) for z in _subquotient(K, k).basis]
    return DifferentialCharacter(K, k, phases, coboundary(omega))


def character_from_curvature(curvature: RationalCochain) -> DifferentialCharacter:
    """Some character with the given curvature.

    On boundaries the character is forced (``f(d b) = c(b)``); it is extended
    to all cycles by dividing in Q/Z. The result is determined up to a flat
    character.
    """
    K, k = curvature.complex, curvature.degree - 1
    if k < 0:
        raise DegreeError("curvature of a character has degree at least 1")
    if not is_closed(curvature) or not integer_periods(curvature):
        raise InvalidCharacterError(["curvature must be closed with integer periods"])
    h = _subquotient(K, k).divide(curvature.to_vector())
    return DifferentialCharacter(K, k, h, curvature)


def flat_character(K: Complex, degree: int, generator_phases: Sequence) -> DifferentialCharacter:
    """The flat character sending the i-th homology generator to the i-th phase.

    Phases on torsion generators must be killed by the generator's order,
    otherwise the result does not validate.
    """
    sq = _subquotient(K, degree)
    if len(generator_phases) != len(sq.orders):
        raise ValueError(f"expected {len(sq.orders)} generator phases, got {len(generator_phases)}")
    phi = [Phase(p) for p in generator_phases]
    cmap = sq.class_map
    phases = [_phase_on(phi, cmap.column(j)) for j in range(sq.rank)]
    return DifferentialCharacter(K, degree, phases, RationalCochain.zero(K, degree + 1))


def _same(f: DifferentialCharacter, g: DifferentialCharacter):
    if f.degree != g.degree or f.complex != g.complex:
        raise DegreeError("characters live on different complexes or degrees")


def char_add(f: DifferentialCharacter, g: DifferentialCharacter) -> DifferentialCharacter:
    _same(f, g)
    return DifferentialCharacter(
        f.complex,
        f.degree,
        [a + b for a, b in zip(f.basis_phases, g.basis_phases)],
        f.curvature + g.curvature,
    )


def char_negate(f: DifferentialCharacter) -> DifferentialCharacter:
    return DifferentialCharacter(f.complex, f.degree, [-a for a in f.basis_phases], -f.curvature)


def lift_values(f: DifferentialCharacter, complement_phases: Optional[Sequence] = None) -> list:
    """Per-cell phases of a homomorphism on k-chains restricting to ``f``.

    The k-chains split as cycles (+) a complement ``W`` read off the Smith
    form of the boundary; the lift equals ``f`` on the cycle basis and
    ``complement_phases`` (zero by default) on the basis of ``W``. Different
    complement phases give every other lift.
    """
    K, k = f.complex, f.degree
    sq = _subquotient(K, k)
    dec = sq.kernel_snf
    r = dec.rank
    if complement_phases is None:
        complement_phases = [Phase(0)] * r
    if len(complement_phases) != r:
        raise ValueError(f"expected {r} complement phases, got {len(complement_phases)}")
    on_basis = [Phase(p).value for p in complement_phases] + [p.value for p in f.basis_phases]
    lift = [Fraction(0)] * K.n_cells(k)
    # e_c = sum_j V_inv[j, c] v_j
    for (j, c), a in dec.V_inv.entries.items():
        lift[c] += a * on_basis[j]
    return [Phase(v) for v in lift]


def complement_size(K: Complex, degree: int) -> int:
    return _subquotient(K, degree).kernel_snf.rank


def characteristic_class(f: DifferentialCharacter, complement_phases: Optional[Sequence] = None) -> HomologyClass:
    """Class in ``H^{k+1}(K; Z)`` of the integer cocycle ``u(b) = c(b) - T(boundary b)``.

    ``T`` is a lift of ``f`` to (k)-chains with representatives in [0, 1).
    The class does not depend on the lift; ``complement_phases`` selects one.
    """
    violations = validate(f)
    if violations:
        raise InvalidCharacterError(violations)
    K, k = f.complex, f.degree
    T = [p.value for p in lift_values(f, complement_phases)]
    c = f.curvature
    u = []
    for j in range(K.n_cells(k + 1)):
        beta = Chain(K, k + 1, {j: 1})
        db = boundary(beta)
        val = integrate(c, beta) - sum((m * T[i] for i, m in db.coeffs.items()), Fraction(0))
        if val.denominator != 1:
            raise RuntimeError(f"non-integer characteristic cocycle {val} on {K.label(k + 1, j)}")
        u.append(int(val))
    _, cls = cohomology_integer(K, k + 1).coboundary_test(u)
    return cls
