"""Random generators for complexes, chains, forms and characters."""

import random
from fractions import Fraction

from chainfield.chains import Chain, _subquotient, cohomology_integer
from chainfield.characters import char_add, character_from_curvature, character_from_form, flat_character
from chainfield.complexes import build_standard
from chainfield.forms import Phase, RationalCochain, coboundary

DENOMS = (1, 2, 3, 4, 5, 6, 8, 12)

BUILDER_CASES = [
    ("circle", {"m": 5}),
    ("torus2_min", {}),
    ("klein_min", {}),
    ("sphere_cube", {}),
    ("torus3_min", {}),
]


def builders():
    return [(name, build_standard(name, **params)) for name, params in BUILDER_CASES]


def rand_rational(rng: random.Random, spread: int = 3) -> Fraction:
    return Fraction(rng.randint(-spread * 12, spread * 12), rng.choice(DENOMS))


def rand_form(rng, K, k, density=0.7) -> RationalCochain:
    return RationalCochain(
        K, k, {i: rand_rational(rng) for i in range(K.n_cells(k)) if rng.random() < density}
    )


def rand_chain(rng, K, k, spread=3) -> Chain:
    return Chain(K, k, {i: rng.randint(-spread, spread) for i in range(K.n_cells(k))})


def rand_cycle(rng, K, k, spread=3) -> Chain:
    sq = _subquotient(K, k)
    coeffs = [rng.randint(-spread, spread) for _ in range(sq.rank)]
    return Chain.from_vector(K, k, sq.from_coordinates(coeffs))


def rand_flat_phases(rng, K, k) -> list:
    out = []
    for d in _subquotient(K, k).orders:
        if d:
            out.append(Phase(Fraction(rng.randrange(d), d)))
        else:
            out.append(Phase(Fraction(rng.randrange(24), 24)))
    return out


def rand_curvature(rng, K, k) -> RationalCochain:
    """A closed (k+1)-cochain with integer periods: integer cocycle plus exact part."""
    c = coboundary(rand_form(rng, K, k))
    for u in cohomology_integer(K, k + 1).cocycle_basis:
        a = rng.randint(-2, 2)
        if a:
            c = c + RationalCochain(K, k + 1, {i: a * v for i, v in enumerate(u) if v})
    return c


def rand_character(rng, K, k):
    f = character_from_form(rand_form(rng, K, k))
    f = char_add(f, flat_character(K, k, rand_flat_phases(rng, K, k)))
    if K.n_cells(k + 1):
        f = char_add(f, character_from_curvature(rand_curvature(rng, K, k)))
    return f


def rand_complement(rng, K, k) -> list:
    n = _subquotient(K, k).kernel_snf.rank
    return [Phase(Fraction(rng.randrange(60), 60)) for _ in range(n)]
