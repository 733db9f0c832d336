"""Differential characters and chain field theories on finite cellular complexes."""

from .cft import (
    ChainFieldTheory,
    IsoWitness,
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
    star,
    trivial_theory,
)
from .chains import Chain, boundary, cohomology_integer, homology, homology_class, is_cycle
from .characters import (
    DifferentialCharacter,
    char_add,
    char_negate,
    character_from_form,
    characteristic_class,
    evaluate,
    validate,
)
from .complexes import Complex, build_standard, from_chain_data
from .forms import Phase, RationalCochain, coboundary, integrate

__version__ = "0.1.0"
