"""Exact integer linear algebra.

Everything here works over Python ints, so entries never overflow. The
Smith normal form uses a fixed pivoting rule (smallest nonzero absolute
value, then lowest row, then lowest column) which makes every basis derived
from it reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Optional, Sequence

IntVector = list


class IntMatrix:
    """Sparse integer matrix; absent entries are zero."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries: Optional[Mapping] = None):
        if rows < 0 or cols < 0:
            raise ValueError(f"negative shape ({rows}, {cols})")
        store = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols} matrix")
            if isinstance(v, bool) or int(v) != v:
                raise TypeError(f"non-integer entry {v!r} at ({i}, {j})")
            if v:
                store[(i, j)] = int(v)
        self.rows = rows
        self.cols = cols
        self._entries = store

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> "IntMatrix":
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError(f"row {i} has length {len(row)}, expected {ncols}")
            for j, v in enumerate(row):
                if v:
                    entries[(i, j)] = v
        return cls(nrows, ncols, entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int) -> "IntMatrix":
        entries = {}
        for j, col in enumerate(columns):
            if len(col) != nrows:
                raise ValueError(f"column {j} has length {len(col)}, expected {nrows}")
            for i, v in enumerate(col):
                if v:
                    entries[(i, j)] = v
        return cls(nrows, len(columns), entries)

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    @property
    def entries(self) -> Mapping:
        return MappingProxyType(self._entries)

    def __getitem__(self, key) -> int:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(key)
        return self._entries.get((i, j), 0)

    def items(self) -> Iterator:
        return iter(sorted(self._entries.items()))

    def to_rows(self) -> list:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def column(self, j: int) -> IntVector:
        col = [0] * self.rows
        for (i, jj), v in self._entries.items():
            if jj == j:
                col[i] = v
        return col

    def row(self, i: int) -> IntVector:
        r = [0] * self.cols
        for (ii, j), v in self._entries.items():
            if ii == i:
                r[j] = v
        return r

    def columns(self) -> list:
        cols = [[0] * self.rows for _ in range(self.cols)]
        for (i, j), v in self._entries.items():
            cols[j][i] = v
        return cols

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self._entries.items()})

    def is_zero(self) -> bool:
        return not self._entries

    def apply(self, x: Sequence[int]) -> IntVector:
        """Matrix-vector product. Works for any ring of entries in ``x``."""
        if len(x) != self.cols:
            raise ValueError(f"vector of length {len(x)} for {self.rows}x{self.cols} matrix")
        out = [0] * self.rows
        for (i, j), v in self._entries.items():
            if x[j]:
                out[i] += v * x[j]
        return out

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            by_row = {}
            for (k, j), v in other._entries.items():
                by_row.setdefault(k, []).append((j, v))
            acc = {}
            for (i, k), a in self._entries.items():
                for j, b in by_row.get(k, ()):
                    acc[(i, j)] = acc.get((i, j), 0) + a * b
            return IntMatrix(self.rows, other.cols, acc)
        return self.apply(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self._entries.items())))

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}, {self.cols}, {dict(sorted(self._entries.items()))})"


@dataclass(frozen=True)
class SnfDecomposition:
    """``U @ M @ V == D`` with ``U``, ``V`` unimodular and ``D`` in Smith form.

    The inverses of ``U`` and ``V`` are tracked alongside so that change of
    basis in either direction stays exact and cheap.
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix

    @property
    def diagonal(self) -> list:
        n = min(self.D.rows, self.D.cols)
        return [self.D[i, i] for i in range(n)]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _identity_rows(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def snf(M: IntMatrix) -> SnfDecomposition:
    """Smith normal form with unimodular transforms.

    >>> snf(IntMatrix.from_rows([[2, 4], [6, 8]])).diagonal
    [2, 4]
    """
    m, n = M.rows, M.cols
    A = M.to_rows()
    U, U_inv = _identity_rows(m), _identity_rows(m)
    V, V_inv = _identity_rows(n), _identity_rows(n)

    # row_i += q * row_j
    def row_add(i, j, q):
        A[i] = [a + q * b for a, b in zip(A[i], A[j])]
        U[i] = [a + q * b for a, b in zip(U[i], U[j])]
        for r in U_inv:
            r[j] -= q * r[i]

    def row_swap(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]
            for r in U_inv:
                r[i], r[j] = r[j], r[i]

    def row_negate(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]
        for r in U_inv:
            r[i] = -r[i]

    # col_i += q * col_j
    def col_add(i, j, q):
        for r in A:
            r[i] += q * r[j]
        for r in V:
            r[i] += q * r[j]
        V_inv[j] = [a - q * b for a, b in zip(V_inv[j], V_inv[i])]

    def col_swap(i, j):
        if i != j:
            for r in A:
                r[i], r[j] = r[j], r[i]
            for r in V:
                r[i], r[j] = r[j], r[i]
            V_inv[i], V_inv[j] = V_inv[j], V_inv[i]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                a = row[j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
        if best is None:
            break
        row_swap(t, best[1])
        col_swap(t, best[2])
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    row_add(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    col_add(j, t, -(A[t][j] // p))
            # leftover remainders are strictly smaller than the pivot
            cand = None
            for i in range(t + 1, m):
                a = A[i][t]
                if a and (cand is None or abs(a) < cand[0]):
                    cand = (abs(a), "row", i)
            for j in range(t + 1, n):
                a = A[t][j]
                if a and (cand is None or abs(a) < cand[0]):
                    cand = (abs(a), "col", j)
            if cand is not None:
                if cand[1] == "row":
                    row_swap(t, cand[2])
                else:
                    col_swap(t, cand[2])
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is not None:
                row_add(t, bad, 1)
                continue
            break
        if A[t][t] < 0:
            row_negate(t)
        t += 1

    return SnfDecomposition(
        U=IntMatrix.from_rows(U, m),
        D=IntMatrix.from_rows(A, n),
        V=IntMatrix.from_rows(V, n),
        U_inv=IntMatrix.from_rows(U_inv, m),
        V_inv=IntMatrix.from_rows(V_inv, n),
    )


def kernel_basis(M: IntMatrix) -> list:
    """A Z-basis of ``{x : M x = 0}``, read off the columns of ``V``."""
    dec = snf(M)
    cols = dec.V.columns()
    return cols[dec.rank:]


def solve(M: IntMatrix, b: Sequence[int]) -> Optional[IntVector]:
    """An integer ``x`` with ``M x = b``, or None when there is none."""
    if len(b) != M.rows:
        raise ValueError(f"right-hand side has length {len(b)}, matrix has {M.rows} rows")
    return solve_with(snf(M), b)


def solve_with(dec: SnfDecomposition, b: Sequence[int]) -> Optional[IntVector]:
    c = dec.U.apply(list(b))
    diag = dec.diagonal
    r = dec.rank
    y = [0] * dec.V.rows
    for i in range(r):
        q, rem = divmod(c[i], diag[i])
        if rem:
            return None
        y[i] = q
    if any(c[i] for i in range(r, len(c))):
        return None
    return dec.V.apply(y)


def cokernel(M: IntMatrix) -> tuple:
    """``(free_rank, torsion)`` of ``Z^rows / im M``."""
    dec = snf(M)
    return M.rows - dec.rank, [d for d in dec.diagonal if d > 1]


def split_kernel(M: IntMatrix) -> tuple:
    """Split the domain as ``ker M (+) W`` with ``M`` injective on ``W``.

    Returns ``(K, W)``; together they are the columns of a unimodular matrix.
    """
    dec = snf(M)
    cols = dec.V.columns()
    return cols[dec.rank:], cols[: dec.rank]


def _mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


class Subquotient:
    """The group ``ker A / im B`` for composable integer maps with ``A B = 0``.

    ``A`` maps Z^N -> Z^M and ``B`` maps Z^Q -> Z^N. The kernel of ``A`` is
    given the basis from ``snf(A)``; the image of ``B`` written in that
    basis is the relation matrix whose Smith form yields the group
    structure.
    """

    def __init__(self, A: IntMatrix, B: IntMatrix):
        if A.cols != B.rows:
            raise ValueError(f"maps do not compose: {A.shape} after {B.shape}")
        if not (A @ B).is_zero():
            raise ValueError("A @ B is not zero")
        self.A = A
        self.B = B
        self.kernel_snf = snf(A)
        r = self.kernel_snf.rank
        self._r = r
        self.basis = self.kernel_snf.V.columns()[r:]
        p = len(self.basis)
        moved = self.kernel_snf.V_inv @ B
        rel = {(i - r, j): v for (i, j), v in moved.entries.items() if i >= r}
        self.relations = IntMatrix(p, B.cols, rel)
        self.relation_snf = snf(self.relations)
        diag = self.relation_snf.diagonal
        r2 = self.relation_snf.rank
        # one entry per nontrivial cyclic factor: (row of U, order); order 0 = free
        self._factors = [(i, diag[i]) for i in range(r2) if diag[i] > 1]
        self._factors += [(i, 0) for i in range(r2, p)]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def betti(self) -> int:
        return sum(1 for _, d in self._factors if d == 0)

    @property
    def torsion(self) -> list:
        return [d for _, d in self._factors if d]

    @property
    def orders(self) -> list:
        """Order of each cyclic factor, torsion first; 0 marks a free factor."""
        return [d for _, d in self._factors]

    @property
    def class_map(self) -> IntMatrix:
        U = self.relation_snf.U
        return IntMatrix.from_rows([U.row(i) for i, _ in self._factors], self.rank)

    @property
    def generators(self) -> list:
        """Kernel vectors representing each cyclic factor, in ``orders`` order."""
        U_inv = self.relation_snf.U_inv
        out = []
        for i, _ in self._factors:
            coeffs = U_inv.column(i)
            out.append(self.from_coordinates(coeffs))
        return out

    def in_kernel(self, x: Sequence[int]) -> bool:
        return not any(self.A.apply(list(x)))

    def coordinates(self, x: Sequence[int]) -> IntVector:
        """Coordinates of a kernel vector in ``basis``."""
        if not self.in_kernel(x):
            raise ValueError("vector is not in the kernel")
        return self.kernel_snf.V_inv.apply(list(x))[self._r:]

    def from_coordinates(self, coeffs: Sequence[int]) -> IntVector:
        out = [0] * self.A.cols
        for c, v in zip(coeffs, self.basis):
            if c:
                for k, e in enumerate(v):
                    out[k] += c * e
        return out

    def class_of(self, x: Sequence[int]) -> tuple:
        """``(free_part, torsion_part)`` of the class of a kernel vector."""
        w = self.relation_snf.U.apply(self.coordinates(x))
        free = tuple(w[i] for i, d in self._factors if d == 0)
        tors = tuple(w[i] % d for i, d in self._factors if d)
        return free, tors

    def preimage(self, x: Sequence[int]) -> Optional[IntVector]:
        """Some ``z`` with ``B z = x``, or None when ``x`` is not in the image."""
        if not hasattr(self, "_image_snf"):
            self._image_snf = snf(self.B)
        return solve_with(self._image_snf, x)

    def divide(self, values: Sequence) -> list:
        """Extend a U(1)-valued map through ``B``.

        ``values`` gives a homomorphism ``g: Z^Q -> Q/Z`` on the standard
        basis; it must vanish on ``ker B``. Returns ``h`` on ``basis`` (as
        fractions in [0, 1)) with ``h(B e_q) = g(e_q)`` for every ``q``.
        Divisibility of Q/Z is what makes this possible.
        """
        if len(values) != self.B.cols:
            raise ValueError(f"expected {self.B.cols} values, got {len(values)}")
        g = [Fraction(v) for v in values]
        dec = self.relation_snf
        diag = dec.diagonal
        V_cols = dec.V.columns()
        for i in range(dec.rank, len(V_cols)):
            if _mod1(sum(c * gv for c, gv in zip(V_cols[i], g))):
                raise ValueError("map does not vanish on the kernel of B")
        adapted = [Fraction(0)] * self.rank
        for i in range(dec.rank):
            gb = _mod1(sum(c * gv for c, gv in zip(V_cols[i], g)))
            adapted[i] = gb / diag[i]
        U = dec.U
        h = [Fraction(0)] * self.rank
        for (i, j), u in U.entries.items():
            h[j] += u * adapted[i]
        return [_mod1(x) for x in h]


def determinant(M: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    A = M.to_rows()
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1


def stack_columns(vectors: Iterable[Sequence[int]], nrows: int) -> IntMatrix:
    return IntMatrix.from_columns([list(v) for v in vectors], nrows)
