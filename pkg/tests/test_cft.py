import random
from fractions import Fraction

import pytest

from chainfield.cft import (
    ChainFieldTheory,
    apply,
    cft_from_character,
    cft_from_form,
    classify_flat,
    holonomy,
    holonomy_character,
    invert,
    is_deformation_invariant,
    is_flat,
    isomorphism_witness,
    non_isomorphism_reason,
    smoothness_violations,
    star,
    trivial_theory,
    witness_holds,
)
from chainfield.chains import Chain, DegreeError, NotACycleError, boundary, homology
from chainfield.characters import InvalidCharacterError, character_from_form, flat_character, trivial_character
from chainfield.complexes import circle, klein_min, sphere_cube, torus2_min
from chainfield.forms import Phase, RationalCochain, coboundary
from helpers import builders, rand_chain, rand_character, rand_complement, rand_cycle, rand_form


def test_apply_examples():
    c4 = circle(4)
    E = ChainFieldTheory(c4, 1, [Fraction(1, 8)] * 4, RationalCochain.zero(c4, 2))
    assert apply(E, Chain.zero(c4, 1)) == 0
    s = Chain(c4, 1, {0: 1, 1: 1})
    assert apply(E, s) == Fraction(1, 4)
    assert apply(E, -s) == -apply(E, s)
    with pytest.raises(DegreeError):
        apply(E, Chain.zero(c4, 0))


def test_holonomy_examples():
    c4 = circle(4)
    E = cft_from_form(RationalCochain(c4, 1, {i: Fraction(1, 8) for i in range(4)}))
    assert holonomy(E, Chain(c4, 1, {i: 1 for i in range(4)})) == Fraction(1, 2)
    with pytest.raises(NotACycleError):
        holonomy(E, Chain(c4, 1, {0: 1}))
    K = klein_min()
    F = ChainFieldTheory(K, 1, [0, Fraction(1, 2)], RationalCochain.zero(K, 2))
    assert holonomy(F, Chain.from_labels(K, 1, {"b": 1})) == Fraction(1, 2)
    assert holonomy(F, boundary(Chain.from_labels(K, 2, {"F": 1}))) == 0


def test_normal_form_automorphism_acts_by_holonomy():
    # in normal form E(s) on E(g) is multiplication by the phase of s
    rng = random.Random(5)
    for name, K in builders():
        for k in range(K.top_dim + 1):
            E = cft_from_character(rand_character(rng, K, k), rand_complement(rng, K, k))
            z = rand_cycle(rng, K, k)
            assert holonomy(E, z) == apply(E, z)


def test_cft_from_form_examples():
    c4 = circle(4)
    assert cft_from_form(RationalCochain.zero(c4, 1)) == trivial_theory(c4, 1)
    E = cft_from_form(RationalCochain(c4, 1, {i: Fraction(1, 8) for i in range(4)}))
    assert is_flat(E)
    K = klein_min()
    E = cft_from_form(RationalCochain.from_labels(K, 1, {"b": "1/3"}))
    assert not is_flat(E)
    assert E.curvature.labelled() == {"F": Fraction(2, 3)}
    assert smoothness_violations(E) == []


def test_cft_from_character_examples():
    K = klein_min()
    assert cft_from_character(trivial_character(K, 1)) == trivial_theory(K, 1)
    f = flat_character(K, 1, [Fraction(1, 2), 0])
    assert holonomy_character(cft_from_character(f)) == f
    with pytest.raises(InvalidCharacterError):
        from chainfield.characters import DifferentialCharacter

        cft_from_character(DifferentialCharacter(K, 1, [0, Fraction(1, 3)], RationalCochain.zero(K, 2)))


def test_permuted_complement_lifts_are_isomorphic():
    c5 = circle(5)
    f = character_from_form(RationalCochain(c5, 1, {0: Fraction(1, 7), 3: Fraction(2, 5)}))
    E = cft_from_character(f)
    F = cft_from_character(f, [Fraction(k, 11) for k in range(1, 5)])
    assert E != F
    w = isomorphism_witness(E, F)
    assert w is not None and witness_holds(w, E, F)


def test_holonomy_character_examples():
    rng = random.Random(2)
    for name, K in builders():
        for k in range(K.top_dim + 1):
            assert holonomy_character(trivial_theory(K, k)) == trivial_character(K, k)
            w1, w2 = rand_form(rng, K, k), rand_form(rng, K, k)
            E, F = cft_from_form(w1), cft_from_form(w2)
            assert holonomy_character(E) == character_from_form(w1)
            from chainfield.characters import char_add

            assert holonomy_character(star(E, F)) == char_add(holonomy_character(E), holonomy_character(F))
            assert star(E, F) == cft_from_form(w1 + w2)


def test_group_operations():
    rng = random.Random(9)
    for name, K in builders():
        for k in range(K.top_dim + 1):
            E = cft_from_character(rand_character(rng, K, k))
            F = cft_from_character(rand_character(rng, K, k))
            G = cft_from_form(rand_form(rng, K, k))
            e = trivial_theory(K, k)
            assert star(E, invert(E)) == e
            assert star(E, e) == E
            assert star(star(E, F), G) == star(E, star(F, G))
            assert star(E, F) == star(F, E)
            assert star(E, F).curvature == E.curvature + F.curvature
            assert smoothness_violations(star(E, G)) == []


def test_flatness_examples():
    K = klein_min()
    e = trivial_theory(K, 1)
    assert is_flat(e) and is_deformation_invariant(e)
    bad = cft_from_form(RationalCochain.from_labels(K, 1, {"b": "1/3"}))
    assert not is_flat(bad) and not is_deformation_invariant(bad)
    half = ChainFieldTheory(K, 1, [0, Fraction(1, 2)], RationalCochain.zero(K, 2))
    assert is_flat(half) and is_deformation_invariant(half)


def test_integer_curvature_is_deformation_invariant_but_not_flat():
    # the discrete gap: exp kills integer-valued curvature
    K = klein_min()
    E = cft_from_form(RationalCochain.from_labels(K, 1, {"b": "1/2"}))
    assert E.curvature.labelled() == {"F": 1}
    assert not is_flat(E)
    assert is_deformation_invariant(E)


def test_flat_subgroup():
    rng = random.Random(4)
    K = klein_min()
    flats = [cft_from_character(flat_character(K, 1, [Fraction(rng.randrange(2), 2), Fraction(rng.randrange(9), 9)])) for _ in range(10)]
    for E in flats:
        assert is_flat(invert(E))
        for F in flats:
            assert is_flat(star(E, F))


def test_iso_witness_examples():
    K = klein_min()
    E = cft_from_character(flat_character(K, 1, [Fraction(1, 2), 0]))
    w = isomorphism_witness(E, E)
    assert w is not None and all(p == 0 for p in w.phases)
    zero = trivial_theory(K, 1)
    assert isomorphism_witness(E, zero) is None
    assert non_isomorphism_reason(E, zero) == "holonomy differs on basis cycle 1"
    S = sphere_cube()
    A = cft_from_form(RationalCochain(S, 1, {0: Fraction(1, 3)}))
    B = trivial_theory(S, 1)
    assert non_isomorphism_reason(A, B).startswith("curvature differs")


def test_iso_witness_evaluates_on_boundaries():
    c4 = circle(4)
    E = trivial_theory(c4, 1)
    F = ChainFieldTheory(c4, 1, [Fraction(1, 5), Fraction(-1, 5), 0, 0], RationalCochain.zero(c4, 2))
    w = isomorphism_witness(E, F)
    assert w is not None
    for j in range(4):
        s = Chain(c4, 1, {j: 1})
        assert w.evaluate(boundary(s)) == F.lift[j] - E.lift[j]


def test_exact_form_differences_are_isomorphic():
    rng = random.Random(8)
    for name, K in builders():
        for k in range(1, K.top_dim + 1):
            theta = rand_form(rng, K, k - 1)
            omega = RationalCochain(K, k, {}) + coboundary(rand_form(rng, K, k - 1))
            E, F = cft_from_form(omega), cft_from_form(omega + coboundary(theta))
            w = isomorphism_witness(E, F)
            assert w is not None and witness_holds(w, E, F)


def test_classify_flat_examples():
    C = classify_flat(sphere_cube(), 1)
    assert C.group() == "0" and C.generators == ()
    C = classify_flat(klein_min(), 1)
    assert C.group() == "U(1) x Z/2"
    tors = C.generators[0]
    assert tors.order == 2
    K = klein_min()
    assert holonomy(tors.theory, Chain.from_labels(K, 1, {"b": 1})) == Fraction(1, 2)
    assert isomorphism_witness(tors.theory, trivial_theory(K, 1)) is None
    assert isomorphism_witness(star(tors.theory, tors.theory), trivial_theory(K, 1)) is not None
    C = classify_flat(circle(4), 1)
    assert C.group() == "U(1)"
    (g,) = C.generators
    assert g.order == 0 and g.holonomy == Fraction(1, 3)
    assert holonomy(g.theory, g.cycle) == Fraction(1, 3)
    assert classify_flat(torus2_min(), 1).group() == "U(1)^2"
    with pytest.raises(DegreeError):
        classify_flat(circle(4), 2)


def test_degree_zero_theories():
    c4 = circle(4)
    E = cft_from_form(RationalCochain(c4, 0, {0: Fraction(1, 3)}))
    assert E.degree == 0
    assert smoothness_violations(E) == []
    F = cft_from_character(holonomy_character(E))
    w = isomorphism_witness(E, F)
    assert w is not None and w.phases == ()
    assert classify_flat(c4, 0).group() == "U(1)"
