"""Finite cellular complexes given by integer boundary matrices."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping, Optional, Sequence

from .zmodule import IntMatrix


class ComplexError(ValueError):
    """Raised for inconsistent complex data."""


@dataclass(frozen=True)
class CellId:
    degree: int
    index: int
    label: str


class Complex:
    """A chain complex of free abelian groups with labelled cells.

    ``cells[k]`` lists the labels of the degree-``k`` cells in order;
    ``boundary[k]`` maps degree-``k`` cells to degree-``(k-1)`` cells. The
    constructor rejects data with ``d o d != 0``. Instances are treated as
    immutable; derived homology data is memoised on the instance.
    """

    def __init__(self, cells: Sequence[Sequence[str]], boundary: Optional[Mapping[int, IntMatrix]] = None):
        cells = tuple(tuple(str(c) for c in level) for level in cells) or ((),)
        boundary = dict(boundary or {})
        top = len(cells) - 1
        for k, level in enumerate(cells):
            if len(set(level)) != len(level):
                dup = next(c for c in level if level.count(c) > 1)
                raise ComplexError(f"duplicate cell label {dup!r} in degree {k}")
        mats = {}
        for k in range(1, top + 1):
            mat = boundary.pop(k, None)
            if mat is None:
                mat = IntMatrix.zeros(len(cells[k - 1]), len(cells[k]))
            if mat.shape != (len(cells[k - 1]), len(cells[k])):
                raise ComplexError(
                    f"boundary {k} has shape {mat.shape}, expected "
                    f"{(len(cells[k - 1]), len(cells[k]))}"
                )
            mats[k] = mat
        if boundary:
            raise ComplexError(f"boundary matrices given for degrees {sorted(boundary)} outside 1..{top}")
        for k in range(2, top + 1):
            prod = mats[k - 1] @ mats[k]
            if not prod.is_zero():
                (i, j), v = next(prod.items())
                raise ComplexError(
                    f"boundary of boundary is not zero: cell {cells[k][j]!r} (degree {k}) "
                    f"hits {cells[k - 2][i]!r} (degree {k - 2}) with coefficient {v}"
                )
        self.top_dim = top
        self.cells = cells
        self._boundary = mats
        self._index = [{c: i for i, c in enumerate(level)} for level in cells]
        self._cache = {}

    def n_cells(self, k: int) -> int:
        return len(self.cells[k]) if 0 <= k <= self.top_dim else 0

    def labels(self, k: int) -> tuple:
        return self.cells[k] if 0 <= k <= self.top_dim else ()

    def label(self, k: int, index: int) -> str:
        return self.cells[k][index]

    def index(self, k: int, label: str) -> int:
        try:
            return self._index[k][label]
        except (IndexError, KeyError):
            raise ComplexError(f"no cell {label!r} in degree {k}") from None

    def cell(self, k: int, label: str) -> CellId:
        return CellId(k, self.index(k, label), label)

    def boundary_matrix(self, k: int) -> IntMatrix:
        """The matrix of the boundary from degree ``k`` to ``k - 1``.

        Degrees outside ``1..top_dim`` give zero matrices of the right shape.
        """
        if k in self._boundary:
            return self._boundary[k]
        return IntMatrix.zeros(self.n_cells(k - 1), self.n_cells(k))

    def cached(self, key, build):
        # population is idempotent, so a racing duplicate build is harmless
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Complex):
            return NotImplemented
        return self.cells == other.cells and self._boundary == other._boundary

    def __hash__(self):
        return hash(self.cells)

    def __repr__(self) -> str:
        counts = ", ".join(str(len(c)) for c in self.cells)
        return f"Complex(top_dim={self.top_dim}, cells=[{counts}])"


def _default_label(k: int, i: int) -> str:
    prefix = {0: "v", 1: "e", 2: "f"}.get(k)
    return f"{prefix}{i}" if prefix else f"c{k}_{i}"


def from_chain_data(boundaries: Sequence[IntMatrix], labels: Optional[Sequence[Sequence[str]]] = None) -> Complex:
    """Build a complex from ``[d_1, d_2, ...]``.

    An empty list gives the empty complex (no cells, ``top_dim`` 0).
    """
    if not boundaries:
        return Complex([labels[0]] if labels else [()])
    counts = [boundaries[0].rows]
    for k, mat in enumerate(boundaries, start=1):
        if mat.rows != counts[-1]:
            raise ComplexError(
                f"boundary {k} has {mat.rows} rows but degree {k - 1} has {counts[-1]} cells"
            )
        counts.append(mat.cols)
    if labels is None:
        labels = [[_default_label(k, i) for i in range(n)] for k, n in enumerate(counts)]
    elif [len(level) for level in labels] != counts:
        raise ComplexError(f"label counts {[len(level) for level in labels]} do not match {counts}")
    return Complex(labels, {k: m for k, m in enumerate(boundaries, start=1)})


def circle(m: int = 4) -> Complex:
    if not isinstance(m, int) or m < 3:
        raise ComplexError(f"circle needs m >= 3, got {m!r}")
    d1 = {}
    for i in range(m):
        d1[((i + 1) % m, i)] = 1
        d1[(i, i)] = -1
    return Complex(
        [[f"v{i}" for i in range(m)], [f"e{i}" for i in range(m)]],
        {1: IntMatrix(m, m, d1)},
    )


def torus2_min() -> Complex:
    return Complex([["v"], ["a", "b"], ["F"]])


def klein_min() -> Complex:
    # F = a + b - a + b
    return Complex([["v"], ["a", "b"], ["F"]], {2: IntMatrix.from_rows([[0], [2]])})


def torus3_min() -> Complex:
    return Complex([["v"], ["a", "b", "c"], ["Fab", "Fbc", "Fca"], ["T"]])


def sphere_cube() -> Complex:
    """Boundary of the unit cube, faces oriented by the outward normal."""
    verts = list(product((0, 1), repeat=3))
    vlabel = {p: "v" + "".join(map(str, p)) for p in verts}
    edges = []
    for axis in range(3):
        for p in verts:
            if p[axis] == 0:
                q = tuple(1 if a == axis else c for a, c in enumerate(p))
                edges.append((p, q))
    eindex = {e: i for i, e in enumerate(edges)}
    elabel = [f"e{vlabel[p][1:]}_{vlabel[q][1:]}" for p, q in edges]

    d1 = {}
    for j, (p, q) in enumerate(edges):
        d1[(verts.index(q), j)] = 1
        d1[(verts.index(p), j)] = -1

    def edge(p, axis):
        q = tuple(1 if a == axis else c for a, c in enumerate(p))
        return eindex[(p, q)]

    def corner(fixed_axis, s, u, w):
        pt = [0, 0, 0]
        pt[fixed_axis] = s
        j, k = [a for a in range(3) if a != fixed_axis]
        pt[j], pt[k] = u, w
        return tuple(pt)

    faces, d2 = [], {}
    for axis in range(3):
        j, k = [a for a in range(3) if a != axis]
        for s in (0, 1):
            col = len(faces)
            faces.append(f"F_{'xyz'[axis]}{s}")
            # e_j x e_k is +e_axis except for axis 1
            sign = (1 if axis != 1 else -1) * (1 if s == 1 else -1)
            terms = [
                (edge(corner(axis, s, 0, 0), j), 1),
                (edge(corner(axis, s, 1, 0), k), 1),
                (edge(corner(axis, s, 0, 1), j), -1),
                (edge(corner(axis, s, 0, 0), k), -1),
            ]
            for e, c in terms:
                d2[(e, col)] = sign * c
    return Complex(
        [[vlabel[p] for p in verts], elabel, faces],
        {1: IntMatrix(8, 12, d1), 2: IntMatrix(12, 6, d2)},
    )


BUILDERS = {
    "circle": circle,
    "torus2_min": torus2_min,
    "klein_min": klein_min,
    "sphere_cube": sphere_cube,
    "torus3_min": torus3_min,
}


def build_standard(name: str, **params) -> Complex:
    try:
        builder = BUILDERS[name]
    except KeyError:
        raise ComplexError(f"unknown complex {name!r}; choose from {', '.join(BUILDERS)}") from None
    try:
        return builder(**params)
    except TypeError as exc:
        raise ComplexError(f"bad parameters for {name}: {exc}") from None
