"""Chains, cycles, homology and integral cohomology of a complex.

The chain category is never stored: its objects are n-cycles, a morphism
``g -> g'`` is an (n+1)-chain ``s`` with ``d s = -g + g'``, and composition
is addition. :func:`morphism_compose` and :func:`homologous` realise it on
demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .complexes import Complex
from .zmodule import IntMatrix, Subquotient


class DegreeError(ValueError):
    """Degrees of the operands do not fit the operation."""


class NotACycleError(ValueError):
    """A cycle was required."""


class Chain:
    """An integer combination of degree-``k`` cells, stored sparsely by index."""

    __slots__ = ("complex", "degree", "coeffs")

    def __init__(self, complex: Complex, degree: int, coeffs: Optional[Mapping[int, int]] = None):
        n = complex.n_cells(degree)
        clean = {}
        for i, c in (coeffs or {}).items():
            if not 0 <= i < n:
                raise IndexError(f"no degree-{degree} cell with index {i}")
            if isinstance(c, bool) or int(c) != c:
                raise TypeError(f"chain coefficient {c!r} is not an integer")
            if c:
                clean[i] = int(c)
        self.complex = complex
        self.degree = degree
        self.coeffs = clean

    @classmethod
    def from_labels(cls, complex: Complex, degree: int, coeffs: Mapping[str, int]) -> "Chain":
        return cls(complex, degree, {complex.index(degree, lab): c for lab, c in coeffs.items()})

    @classmethod
    def from_vector(cls, complex: Complex, degree: int, vec: Sequence[int]) -> "Chain":
        if len(vec) != complex.n_cells(degree):
            raise DegreeError(f"vector of length {len(vec)} for {complex.n_cells(degree)} cells")
        return cls(complex, degree, {i: c for i, c in enumerate(vec) if c})

    @classmethod
    def zero(cls, complex: Complex, degree: int) -> "Chain":
        return cls(complex, degree)

    def to_vector(self) -> list:
        vec = [0] * self.complex.n_cells(self.degree)
        for i, c in self.coeffs.items():
            vec[i] = c
        return vec

    def labelled(self) -> dict:
        return {self.complex.label(self.degree, i): c for i, c in sorted(self.coeffs.items())}

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "Chain"):
        if not isinstance(other, Chain):
            raise TypeError(f"expected a Chain, got {type(other).__name__}")
        if other.degree != self.degree or other.complex != self.complex:
            raise DegreeError(f"cannot combine degree {self.degree} and degree {other.degree} chains")

    def __add__(self, other: "Chain") -> "Chain":
        self._check(other)
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            out[i] = out.get(i, 0) + c
        return Chain(self.complex, self.degree, out)

    def __neg__(self) -> "Chain":
        return Chain(self.complex, self.degree, {i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __rmul__(self, n: int) -> "Chain":
        return Chain(self.complex, self.degree, {i: n * c for i, c in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs and self.complex == other.complex

    def __hash__(self):
        return hash((self.degree, frozenset(self.coeffs.items())))

    def __repr__(self) -> str:
        if not self.coeffs:
            return f"Chain[{self.degree}](0)"
        terms = " ".join(f"{c:+d}*{lab}" for lab, c in self.labelled().items())
        return f"Chain[{self.degree}]({terms})"


@dataclass(frozen=True)
class HomologyClass:
    """Coordinates in ``Z^betti (+) Z/t_1 (+) ...``; residues are reduced."""

    free_part: tuple
    torsion_part: tuple

    def is_zero(self) -> bool:
        return not any(self.free_part) and not any(self.torsion_part)


def boundary(sigma: Chain) -> Chain:
    if sigma.degree < 1:
        raise DegreeError("boundary of a degree-0 chain is not defined")
    mat = sigma.complex.boundary_matrix(sigma.degree)
    return Chain.from_vector(sigma.complex, sigma.degree - 1, mat.apply(sigma.to_vector()))


def is_cycle(sigma: Chain) -> bool:
    if sigma.degree == 0:
        return True
    return boundary(sigma).is_zero()


def _subquotient(K: Complex, k: int) -> Subquotient:
    """``ker d_k / im d_{k+1}``, memoised per complex; works for any k."""
    return K.cached(("homology", k), lambda: Subquotient(K.boundary_matrix(k), K.boundary_matrix(k + 1)))


def _cosubquotient(K: Complex, k: int) -> Subquotient:
    return K.cached(
        ("cohomology", k),
        lambda: Subquotient(K.boundary_matrix(k + 1).transpose(), K.boundary_matrix(k).transpose()),
    )


@dataclass(frozen=True)
class HomologyStructure:
    """``H_k`` of a complex.

    ``class_map`` sends cycle-basis coordinates to group coordinates, one row
    per cyclic factor with torsion factors first. ``generators[i]`` is a cycle
    whose class is the i-th unit vector; ``orders[i]`` is its order (0 when
    free).
    """

    degree: int
    betti: int
    torsion: tuple
    cycle_basis: tuple
    class_map: IntMatrix
    generators: tuple
    orders: tuple

    def describe(self) -> str:
        return group_string(self.betti, self.torsion)


def group_string(betti: int, torsion: Sequence[int], free: str = "Z") -> str:
    parts = []
    if betti:
        parts.append(free if betti == 1 else f"{free}^{betti}")
    parts += [f"Z/{t}" for t in torsion]
    return " + ".join(parts) if parts else "0"


def homology(K: Complex, k: int) -> HomologyStructure:
    if not 0 <= k <= K.top_dim:
        raise DegreeError(f"degree {k} outside 0..{K.top_dim}")
    return K.cached(("homology_structure", k), lambda: _homology(K, k))


def _homology(K: Complex, k: int) -> HomologyStructure:
    sq = _subquotient(K, k)
    return HomologyStructure(
        degree=k,
        betti=sq.betti,
        torsion=tuple(sq.torsion),
        cycle_basis=tuple(Chain.from_vector(K, k, v) for v in sq.basis),
        class_map=sq.class_map,
        generators=tuple(Chain.from_vector(K, k, v) for v in sq.generators),
        orders=tuple(sq.orders),
    )


def cycle_basis(K: Complex, k: int) -> tuple:
    """A Z-basis of the k-cycles in the fixed deterministic order."""
    return tuple(Chain.from_vector(K, k, v) for v in _subquotient(K, k).basis)


def cycle_coordinates(sigma: Chain) -> list:
    if not is_cycle(sigma):
        raise NotACycleError(f"{sigma!r} is not a cycle")
    return _subquotient(sigma.complex, sigma.degree).coordinates(sigma.to_vector())


def bounding_chain(sigma: Chain) -> Optional[Chain]:
    """A chain whose boundary is ``sigma``, if ``sigma`` bounds over Z."""
    if not is_cycle(sigma):
        raise NotACycleError(f"{sigma!r} is not a cycle")
    K = sigma.complex
    beta = _subquotient(K, sigma.degree).preimage(sigma.to_vector())
    if beta is None:
        return None
    return Chain.from_vector(K, sigma.degree + 1, beta)


def homology_class(sigma: Chain) -> HomologyClass:
    if not is_cycle(sigma):
        raise NotACycleError(f"{sigma!r} is not a cycle")
    free, tors = _subquotient(sigma.complex, sigma.degree).class_of(sigma.to_vector())
    return HomologyClass(free, tors)


def homologous(gamma: Chain, gamma2: Chain) -> Optional[Chain]:
    """A morphism ``gamma -> gamma2`` of the chain category, if any."""
    for g in (gamma, gamma2):
        if not is_cycle(g):
            raise NotACycleError(f"{g!r} is not a cycle")
    if gamma.degree != gamma2.degree:
        raise DegreeError("cycles of different degree")
    return bounding_chain(gamma2 - gamma)


def morphism_compose(sigma1: Chain, sigma2: Chain, gamma: Chain, gamma1: Chain, gamma2: Chain) -> Chain:
    """Compose ``sigma1: gamma -> gamma1`` with ``sigma2: gamma1 -> gamma2``."""
    if boundary(sigma1) != gamma1 - gamma:
        raise ValueError("first morphism does not run from gamma to gamma'")
    if boundary(sigma2) != gamma2 - gamma1:
        raise ValueError("second morphism does not run from gamma' to gamma''")
    return sigma1 + sigma2


@dataclass(frozen=True)
class CohomologyStructure:
    """``H^k(K; Z)`` computed from the transposed boundary matrices."""

    complex: Complex
    degree: int
    betti: int
    torsion: tuple

    @property
    def _sq(self) -> Subquotient:
        return _cosubquotient(self.complex, self.degree)

    @property
    def cocycle_basis(self) -> list:
        return [list(v) for v in self._sq.basis]

    def describe(self) -> str:
        return group_string(self.betti, self.torsion)

    def is_cocycle(self, u: Sequence[int]) -> bool:
        return self._sq.in_kernel(list(u))

    def coboundary_test(self, u: Sequence[int]) -> tuple:
        """``(witness, cls)`` for an integer cocycle given per k-cell.

        ``witness`` is a (k-1)-cochain ``v`` with ``delta v = u`` or None when
        ``u`` is not a coboundary; ``cls`` is the class coordinates.
        """
        u = list(u)
        if len(u) != self.complex.n_cells(self.degree):
            raise DegreeError(f"cochain of length {len(u)} for {self.complex.n_cells(self.degree)} cells")
        if not self.is_cocycle(u):
            raise NotACycleError("integer cochain is not a cocycle")
        free, tors = self._sq.class_of(u)
        return self._sq.preimage(u), HomologyClass(free, tors)


def cohomology_integer(K: Complex, k: int) -> CohomologyStructure:
    if k < 0:
        raise DegreeError(f"negative degree {k}")
    sq = _cosubquotient(K, k)
    return CohomologyStructure(K, k, sq.betti, tuple(sq.torsion))
