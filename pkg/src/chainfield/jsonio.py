"""JSON encodings of complexes, chains, cochains, characters and theories.

Rationals travel as reduced ``"p/q"`` strings and integers in the complex
format as decimal strings, so nothing passes through floating point.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .cft import ChainFieldTheory, IsoWitness
from .chains import Chain
from .characters import DifferentialCharacter
from .complexes import Complex
from .forms import Phase, RationalCochain
from .zmodule import IntMatrix


class FormatError(ValueError):
    """Input that does not follow the documented JSON layout."""


_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")
_INTEGER = re.compile(r"^-?\d+$")


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2)


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _field(doc, key, where):
    if not isinstance(doc, dict):
        raise FormatError(f"{where}: expected an object, got {type(doc).__name__}")
    if key not in doc:
        raise FormatError(f"{where}: missing field {key!r}")
    return doc[key]


def _int(value, where) -> int:
    if isinstance(value, bool):
        raise FormatError(f"{where}: expected an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and _INTEGER.match(value.strip()):
        return int(value)
    raise FormatError(f"{where}: expected an integer, got {value!r}")


def rational_to_str(q) -> str:
    return str(Fraction(q))


def parse_rational(value, where) -> Fraction:
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.match(value.strip()):
        try:
            return Fraction(value.strip())
        except ZeroDivisionError:
            raise FormatError(f"{where}: zero denominator in {value!r}") from None
    raise FormatError(f"{where}: expected a fraction string 'p/q', got {value!r}")


def complex_to_json(K: Complex) -> dict:
    boundary = {}
    for k in range(1, K.top_dim + 1):
        boundary[str(k)] = [[i, j, str(v)] for (i, j), v in K.boundary_matrix(k).items()]
    return {"top_dim": K.top_dim, "cells": [list(level) for level in K.cells], "boundary": boundary}


def complex_from_json(doc) -> Complex:
    top = _int(_field(doc, "top_dim", "complex"), "complex.top_dim")
    cells = _field(doc, "cells", "complex")
    if not isinstance(cells, list) or not all(isinstance(level, list) for level in cells):
        raise FormatError("complex.cells: expected a list of label lists")
    if len(cells) != top + 1 and not (top == 0 and cells == []):
        raise FormatError(f"complex.cells: {len(cells)} levels for top_dim {top}")
    for k, level in enumerate(cells):
        for lab in level:
            if not isinstance(lab, str):
                raise FormatError(f"complex.cells[{k}]: labels must be strings, got {lab!r}")
    raw = doc.get("boundary", {})
    if not isinstance(raw, dict):
        raise FormatError("complex.boundary: expected an object keyed by degree")
    mats = {}
    for key, triples in raw.items():
        where = f"complex.boundary[{key!r}]"
        k = _int(key, where)
        if not 1 <= k <= top:
            raise FormatError(f"{where}: degree outside 1..{top}")
        if not isinstance(triples, list):
            raise FormatError(f"{where}: expected a list of [row, col, coeff]")
        entries = {}
        for n, t in enumerate(triples):
            if not isinstance(t, list) or len(t) != 3:
                raise FormatError(f"{where}[{n}]: expected [row, col, coeff]")
            i, j = _int(t[0], f"{where}[{n}].row"), _int(t[1], f"{where}[{n}].col")
            if not (0 <= i < len(cells[k - 1]) and 0 <= j < len(cells[k])):
                raise FormatError(f"{where}[{n}]: index ({i}, {j}) out of range")
            entries[(i, j)] = entries.get((i, j), 0) + _int(t[2], f"{where}[{n}].coeff")
        mats[k] = IntMatrix(len(cells[k - 1]), len(cells[k]), entries)
    return Complex(cells or [[]], mats)


def _label_index(K: Complex, degree: int, label, where) -> int:
    if not isinstance(label, str) or label not in K.labels(degree):
        raise FormatError(f"{where}: no degree-{degree} cell labelled {label!r}")
    return K.index(degree, label)


def chain_to_json(sigma: Chain) -> dict:
    return {"degree": sigma.degree, "coeffs": sigma.labelled()}


def chain_from_json(K: Complex, doc) -> Chain:
    k = _int(_field(doc, "degree", "chain"), "chain.degree")
    coeffs = _field(doc, "coeffs", "chain")
    if not isinstance(coeffs, dict):
        raise FormatError("chain.coeffs: expected an object label -> integer")
    out = {}
    for lab, c in coeffs.items():
        out[_label_index(K, k, lab, "chain.coeffs")] = _int(c, f"chain.coeffs[{lab!r}]")
    return Chain(K, k, out)


def cochain_to_json(omega: RationalCochain) -> dict:
    return {"degree": omega.degree, "values": {lab: rational_to_str(v) for lab, v in omega.labelled().items()}}


def cochain_from_json(K: Complex, doc, where: str = "cochain") -> RationalCochain:
    k = _int(_field(doc, "degree", where), f"{where}.degree")
    values = _field(doc, "values", where)
    if not isinstance(values, dict):
        raise FormatError(f"{where}.values: expected an object label -> 'p/q'")
    out = {}
    for lab, v in values.items():
        out[_label_index(K, k, lab, f"{where}.values")] = parse_rational(v, f"{where}.values[{lab!r}]")
    return RationalCochain(K, k, out)


def character_to_json(f: DifferentialCharacter) -> dict:
    return {
        "degree": f.degree,
        "basis_phases": [str(p) for p in f.basis_phases],
        "curvature": cochain_to_json(f.curvature),
    }


def character_from_json(K: Complex, doc) -> DifferentialCharacter:
    k = _int(_field(doc, "degree", "character"), "character.degree")
    phases = _field(doc, "basis_phases", "character")
    if not isinstance(phases, list):
        raise FormatError("character.basis_phases: expected a list of 'p/q'")
    parsed = [Phase(parse_rational(p, f"character.basis_phases[{n}]")) for n, p in enumerate(phases)]
    curvature = cochain_from_json(K, _field(doc, "curvature", "character"), "character.curvature")
    if curvature.degree != k + 1:
        raise FormatError(f"character.curvature: degree {curvature.degree}, expected {k + 1}")
    if k < 0:
        raise FormatError("character.degree: must be non-negative")
    return DifferentialCharacter(K, k, parsed, curvature)


def theory_to_json(E: ChainFieldTheory) -> dict:
    return {
        "degree": E.degree,
        "lift": {E.complex.label(E.degree, i): str(p) for i, p in enumerate(E.lift)},
        "curvature": cochain_to_json(E.curvature),
    }


def theory_from_json(K: Complex, doc) -> ChainFieldTheory:
    k = _int(_field(doc, "degree", "theory"), "theory.degree")
    if k < 0:
        raise FormatError("theory.degree: must be non-negative")
    raw = _field(doc, "lift", "theory")
    if not isinstance(raw, dict):
        raise FormatError("theory.lift: expected an object label -> 'p/q'")
    lift = [Phase(0)] * K.n_cells(k)
    for lab, v in raw.items():
        lift[_label_index(K, k, lab, "theory.lift")] = Phase(parse_rational(v, f"theory.lift[{lab!r}]"))
    curvature = cochain_from_json(K, _field(doc, "curvature", "theory"), "theory.curvature")
    if curvature.degree != k + 1:
        raise FormatError(f"theory.curvature: degree {curvature.degree}, expected {k + 1}")
    return ChainFieldTheory(K, k, lift, curvature)


def witness_to_json(w: IsoWitness) -> dict:
    return {"phases": {str(i): str(p) for i, p in enumerate(w.phases)}}


def witness_from_json(K: Complex, degree: int, size: int, doc) -> IsoWitness:
    raw = _field(doc, "phases", "witness")
    if not isinstance(raw, dict):
        raise FormatError("witness.phases: expected an object index -> 'p/q'")
    phases = [Phase(0)] * size
    for key, v in raw.items():
        i = _int(key, "witness.phases key")
        if not 0 <= i < size:
            raise FormatError(f"witness.phases: index {i} outside 0..{size - 1}")
        phases[i] = Phase(parse_rational(v, f"witness.phases[{key!r}]"))
    return IsoWitness(K, degree, tuple(phases))
