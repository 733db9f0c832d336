import json
import random
from fractions import Fraction

import pytest

from chainfield import jsonio
from chainfield.cft import cft_from_character, isomorphism_witness
from chainfield.chains import Chain
from chainfield.complexes import klein_min
from chainfield.forms import RationalCochain
from chainfield.jsonio import FormatError
from helpers import builders, rand_chain, rand_character, rand_complement, rand_form


def reparse(doc):
    # through text, as the CLI does
    return jsonio.loads(jsonio.dumps(doc))


@pytest.mark.parametrize("name, K", builders())
def test_round_trips(name, K):
    rng = random.Random(name + "json")
    L = jsonio.complex_from_json(reparse(jsonio.complex_to_json(K)))
    assert L == K and L.cells == K.cells
    for k in range(K.top_dim + 1):
        for _ in range(5):
            sigma = rand_chain(rng, K, k)
            assert jsonio.chain_from_json(K, reparse(jsonio.chain_to_json(sigma))) == sigma
            omega = rand_form(rng, K, k)
            assert jsonio.cochain_from_json(K, reparse(jsonio.cochain_to_json(omega))) == omega
            f = rand_character(rng, K, k)
            assert jsonio.character_from_json(K, reparse(jsonio.character_to_json(f))) == f
            E = cft_from_character(f, rand_complement(rng, K, k))
            assert jsonio.theory_from_json(K, reparse(jsonio.theory_to_json(E))) == E


def test_emitted_text_is_canonical():
    K = klein_min()
    omega = RationalCochain.from_labels(K, 1, {"a": Fraction(2, 4), "b": Fraction(-3, 9)})
    doc = jsonio.cochain_to_json(omega)
    assert doc == {"degree": 1, "values": {"a": "1/2", "b": "-1/3"}}
    text = jsonio.dumps(jsonio.complex_to_json(K))
    assert "." not in text.replace('"', "")
    assert json.loads(text)["boundary"]["2"] == [[1, 0, "2"]]
    assert jsonio.dumps({"b": 1, "a": 2}).index('"a"') < jsonio.dumps({"b": 1, "a": 2}).index('"b"')


def test_witness_round_trip():
    K = klein_min()
    from chainfield.characters import flat_character

    E = cft_from_character(flat_character(K, 1, [Fraction(1, 2), 0]))
    w = isomorphism_witness(E, E)
    assert jsonio.witness_from_json(K, 0, len(w.phases), reparse(jsonio.witness_to_json(w))) == w


def test_parse_rational():
    assert jsonio.parse_rational("6/4", "x") == Fraction(3, 2)
    assert jsonio.parse_rational(-3, "x") == -3
    for bad in ("0.5", 0.5, "1/0", "a/b", True, None, "1/-2"):
        with pytest.raises(FormatError):
            jsonio.parse_rational(bad, "x")


def test_malformed_inputs():
    K = klein_min()
    with pytest.raises(FormatError, match="line 2"):
        jsonio.loads('{\n  "degree": ,\n}')
    with pytest.raises(FormatError, match="missing field 'coeffs'"):
        jsonio.chain_from_json(K, {"degree": 1})
    with pytest.raises(FormatError, match="unknown|label"):
        jsonio.chain_from_json(K, {"degree": 1, "coeffs": {"zz": 1}})
    with pytest.raises(FormatError):
        jsonio.chain_from_json(K, {"degree": 1, "coeffs": {"a": "1/2"}})
    with pytest.raises(FormatError, match="curvature"):
        jsonio.character_from_json(K, {"degree": 1, "basis_phases": ["0", "0"], "curvature": {"degree": 1, "values": {}}})
    with pytest.raises(FormatError):
        jsonio.complex_from_json({"top_dim": 1, "cells": [["v"]]})
    with pytest.raises(FormatError):
        jsonio.complex_from_json({"top_dim": 1, "cells": [["v"], ["e"]], "boundary": {"1": [[0, 0, 1.5]]}})
    with pytest.raises(FormatError):
        jsonio.witness_from_json(K, 0, 1, {"phases": {"3": "1/2"}})


def test_absent_lift_entries_are_zero():
    K = klein_min()
    doc = {"degree": 1, "lift": {"b": "1/2"}, "curvature": {"degree": 2, "values": {}}}
    E = jsonio.theory_from_json(K, doc)
    assert E.lift[0] == 0 and E.lift[1] == Fraction(1, 2)
    assert Chain.from_labels(K, 1, {"b": 1}).degree == 1
