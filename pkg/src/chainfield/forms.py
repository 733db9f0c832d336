"""Rational cochains standing in for differential forms, and U(1) phases."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Optional, Union

from .chains import Chain, DegreeError, _subquotient
from .complexes import Complex

Rational = Union[int, Fraction, str]


class Phase:
    """An element of U(1) written additively: ``exp(2 pi i value)``.

    ``value`` is kept reduced into [0, 1).
    """

    __slots__ = ("value",)

    def __init__(self, value: Rational = 0):
        if isinstance(value, Phase):
            value = value.value
        if isinstance(value, float):
            raise TypeError("phases are exact; pass a Fraction or a 'p/q' string")
        v = Fraction(value)
        self.value = v - (v.numerator // v.denominator)

    def __add__(self, other) -> "Phase":
        return Phase(self.value + Phase(other).value)

    __radd__ = __add__

    def __sub__(self, other) -> "Phase":
        return Phase(self.value - Phase(other).value)

    def __rsub__(self, other) -> "Phase":
        return Phase(Phase(other).value - self.value)

    def __neg__(self) -> "Phase":
        return Phase(-self.value)

    def __mul__(self, n: int) -> "Phase":
        if isinstance(n, bool) or int(n) != n:
            raise TypeError("phases are multiplied by integers only")
        return Phase(self.value * int(n))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, Phase):
            return self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == Phase(other).value
        return NotImplemented

    def __hash__(self):
        return hash(("Phase", self.value))

    def __bool__(self) -> bool:
        return bool(self.value)

    @property
    def order(self) -> int:
        """Multiplicative order in U(1); rational phases always have one."""
        return self.value.denominator

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        return f"Phase({self.value})"


class RationalCochain:
    """A degree-``k`` cochain with exact rational values, stored by cell index."""

    __slots__ = ("complex", "degree", "values")

    def __init__(self, complex: Complex, degree: int, values: Optional[Mapping[int, Rational]] = None):
        n = complex.n_cells(degree)
        clean = {}
        for i, v in (values or {}).items():
            if not 0 <= i < n:
                raise IndexError(f"no degree-{degree} cell with index {i}")
            if isinstance(v, float):
                raise TypeError("cochain values are exact; pass a Fraction or a 'p/q' string")
            v = Fraction(v)
            if v:
                clean[i] = v
        self.complex = complex
        self.degree = degree
        self.values = clean

    @classmethod
    def from_labels(cls, complex: Complex, degree: int, values: Mapping[str, Rational]) -> "RationalCochain":
        return cls(complex, degree, {complex.index(degree, lab): v for lab, v in values.items()})

    @classmethod
    def zero(cls, complex: Complex, degree: int) -> "RationalCochain":
        return cls(complex, degree)

    def __call__(self, index: int) -> Fraction:
        return self.values.get(index, Fraction(0))

    def to_vector(self) -> list:
        return [self(i) for i in range(self.complex.n_cells(self.degree))]

    def labelled(self) -> dict:
        return {self.complex.label(self.degree, i): v for i, v in sorted(self.values.items())}

    def is_zero(self) -> bool:
        return not self.values

    def is_integer_valued(self) -> bool:
        return all(v.denominator == 1 for v in self.values.values())

    def _check(self, other):
        if not isinstance(other, RationalCochain):
            raise TypeError(f"expected a RationalCochain, got {type(other).__name__}")
        if other.degree != self.degree or other.complex != self.complex:
            raise DegreeError(f"cannot combine degree {self.degree} and degree {other.degree} cochains")

    def __add__(self, other) -> "RationalCochain":
        self._check(other)
        out = dict(self.values)
        for i, v in other.values.items():
            out[i] = out.get(i, 0) + v
        return RationalCochain(self.complex, self.degree, out)

    def __neg__(self) -> "RationalCochain":
        return RationalCochain(self.complex, self.degree, {i: -v for i, v in self.values.items()})

    def __sub__(self, other) -> "RationalCochain":
        return self + (-other)

    def __rmul__(self, q: Rational) -> "RationalCochain":
        q = Fraction(q)
        return RationalCochain(self.complex, self.degree, {i: q * v for i, v in self.values.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalCochain):
            return NotImplemented
        return self.degree == other.degree and self.values == other.values and self.complex == other.complex

    def __hash__(self):
        return hash((self.degree, frozenset(self.values.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{lab}: {v}" for lab, v in self.labelled().items())
        return f"RationalCochain[{self.degree}]({{{body}}})"


def coboundary(omega: RationalCochain) -> RationalCochain:
    """``(d omega)(b) = omega(boundary b)`` on each (k+1)-cell ``b``."""
    K, k = omega.complex, omega.degree
    out = {}
    for (i, j), c in K.boundary_matrix(k + 1).entries.items():
        v = omega.values.get(i)
        if v:
            out[j] = out.get(j, 0) + c * v
    return RationalCochain(K, k + 1, out)


def integrate(omega: RationalCochain, sigma: Chain) -> Fraction:
    if omega.degree != sigma.degree:
        raise DegreeError(f"cannot integrate a degree-{omega.degree} cochain over a degree-{sigma.degree} chain")
    return sum((c * omega(i) for i, c in sigma.coeffs.items()), Fraction(0))


def exp_pairing(omega: RationalCochain, sigma: Chain) -> Phase:
    return Phase(integrate(omega, sigma))


def is_closed(omega: RationalCochain) -> bool:
    return coboundary(omega).is_zero()


def integer_periods(omega: RationalCochain) -> bool:
    """Closed, and integral on every cycle of the deterministic cycle basis."""
    if not is_closed(omega):
        return False
    K, k = omega.complex, omega.degree
    for z in _subquotient(K, k).basis:
        if sum((c * omega(i) for i, c in enumerate(z) if c), Fraction(0)).denominator != 1:
            return False
    return True
