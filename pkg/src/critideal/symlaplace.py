"""Generalized Laplacian matrices, symbolic minors and combinatorial determinants."""
from __future__ import annotations

import itertools
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .digraph import (
    ContractionResult,
    Digraph,
    GraphError,
    directed_one_factors,
    induced,
    is_forest,
    matchings,
)
from .polyring import MonomialOrder, Polynomial

# cofactor expansion with memoization up to this size, fraction-free above
COFACTOR_LIMIT = 8


class PolyMatrix:
    """Rectangular matrix of polynomials over one ring."""

    __slots__ = ("nvars", "rows", "cols", "entries")

    def __init__(self, nvars: int, entries: Sequence[Sequence[Polynomial]]):
        self.nvars = nvars
        self.entries = [list(r) for r in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        for r in self.entries:
            if len(r) != self.cols:
                raise ValueError("ragged matrix")
            for e in r:
                if e.nvars != nvars:
                    raise ValueError("entries from different rings")

    @classmethod
    def from_ints(cls, nvars: int, rows: Sequence[Sequence[int]]) -> "PolyMatrix":
        return cls(nvars, [[Polynomial.constant(nvars, v) for v in r] for r in rows])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.entries == other.entries and self.nvars == other.nvars

    def evaluate(self, point: Sequence[int]) -> List[List[int]]:
        return [[e.evaluate(point) for e in r] for r in self.entries]

    def substitute(self, assignment, nvars: Optional[int] = None) -> "PolyMatrix":
        target = self.nvars if nvars is None else nvars
        return PolyMatrix(target, [[e.substitute(assignment, nvars) for e in r] for r in self.entries])

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.nvars, [list(c) for c in zip(*self.entries)]) if self.rows else self

    def __repr__(self):
        return "PolyMatrix([" + ", ".join("[" + ", ".join(str(e) for e in r) + "]" for r in self.entries) + "])"


def generalized_laplacian(G: Digraph) -> PolyMatrix:
    """L(G,X): x_u on the diagonal (loops ignored), -m(u,v) elsewhere."""
    n = G.n
    rows = []
    for u in range(1, n + 1):
        row = []
        for v in range(1, n + 1):
            if u == v:
                row.append(Polynomial.var(n, u))
            else:
                row.append(Polynomial.constant(n, -G.mult(u, v)))
        rows.append(row)
    return PolyMatrix(n, rows)


def laplacian_matrix(G: Digraph) -> List[List[int]]:
    """Integer Laplacian D^+ - A; loops cancel out."""
    deg = G.laplacian_degrees()
    return [[deg[u] if u == v else -G.matrix[u][v] for v in range(G.n)] for u in range(G.n)]


def evaluated_laplacian(G: Digraph, d: Sequence[int]) -> List[List[int]]:
    """L(G, d): the generalized Laplacian with x_v = d_v."""
    if len(d) != G.n:
        raise ValueError(f"degree vector has length {len(d)}, expected {G.n}")
    return [[d[u] if u == v else -G.matrix[u][v] for v in range(G.n)] for u in range(G.n)]


def contracted_laplacian(result: ContractionResult, nvars: int) -> PolyMatrix:
    """L(D(U;V), X) with merged variables replaced by their forced values.

    Unmerged vertices keep the variable of their original vertex, so the
    matrix lives in the ring of the digraph that was contracted.
    """
    D = result.digraph
    rows = []
    for a in range(1, D.n + 1):
        row = []
        for b in range(1, D.n + 1):
            if a == b:
                if a in result.forced_values:
                    row.append(Polynomial.constant(nvars, result.forced_values[a]))
                else:
                    row.append(Polynomial.var(nvars, result.origins[a - 1][0]))
            else:
                row.append(Polynomial.constant(nvars, -D.mult(a, b)))
        rows.append(row)
    return PolyMatrix(nvars, rows)


def submatrix(M: PolyMatrix, I: Iterable[int], J: Iterable[int], mode: str = "keep") -> PolyMatrix:
    """M[I;J] (``keep``) or M(I;J) (``delete``); indices are 1-based."""
    I, J = sorted(set(I)), sorted(set(J))
    for i in I:
        if not 1 <= i <= M.rows:
            raise IndexError(f"row {i} out of range")
    for j in J:
        if not 1 <= j <= M.cols:
            raise IndexError(f"column {j} out of range")
    if mode == "delete":
        I = [i for i in range(1, M.rows + 1) if i not in I]
        J = [j for j in range(1, M.cols + 1) if j not in J]
    elif mode != "keep":
        raise ValueError(f"unknown mode {mode!r}")
    return PolyMatrix(M.nvars, [[M.entries[i - 1][j - 1] for j in J] for i in I])


# --------------------------------------------------------------------------
# determinants

class MinorTable:
    """Memoized minors of one matrix, keyed by (row tuple, column tuple).

    Laplace expansion along the first listed row; subproblems are shared
    between all minors that agree on their trailing rows.
    """

    def __init__(self, M: PolyMatrix):
        self.M = M
        self.nvars = M.nvars
        self._one = Polynomial.constant(M.nvars, 1)
        self._zero = Polynomial.zero(M.nvars)
        self._memo: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Polynomial] = {}

    def minor(self, rows: Sequence[int], cols: Sequence[int]) -> Polynomial:
        """Determinant of the submatrix on 0-based sorted ``rows`` x ``cols``."""
        rows, cols = tuple(rows), tuple(cols)
        if len(rows) != len(cols):
            raise ValueError("minor needs as many rows as columns")
        return self._det(rows, cols)

    def _det(self, rows, cols) -> Polynomial:
        if not rows:
            return self._one
        key = (rows, cols)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        r0, rest = rows[0], rows[1:]
        entries = self.M.entries[r0]
        acc: Dict = {}
        for k, c in enumerate(cols):
            e = entries[c]
            if e.is_zero():
                continue
            sub = self._det(rest, cols[:k] + cols[k + 1:])
            if sub.is_zero():
                continue
            prodp = e * sub
            sign = -1 if k % 2 else 1
            for m, v in prodp.items():
                nv = acc.get(m, 0) + sign * v
                if nv:
                    acc[m] = nv
                else:
                    acc.pop(m, None)
        result = Polynomial(self.nvars, acc)
        self._memo[key] = result
        return result


def det(M: PolyMatrix) -> Polynomial:
    """Exact determinant in Z[X]."""
    if M.rows != M.cols:
        raise ValueError(f"determinant of a {M.rows}x{M.cols} matrix")
    if M.rows <= COFACTOR_LIMIT:
        return MinorTable(M).minor(range(M.rows), range(M.cols))
    return det_bareiss(M)


def det_bareiss(M: PolyMatrix) -> Polynomial:
    """Fraction-free Gaussian elimination; every division is exact in Z[X]."""
    if M.rows != M.cols:
        raise ValueError(f"determinant of a {M.rows}x{M.cols} matrix")
    n = M.rows
    if n == 0:
        return Polynomial.constant(M.nvars, 1)
    A = [list(r) for r in M.entries]
    sign = 1
    prev = Polynomial.constant(M.nvars, 1)
    for k in range(n - 1):
        if A[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not A[i][k].is_zero()), None)
            if swap is None:
                return Polynomial.zero(M.nvars)
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]).exact_div(prev)
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return d if sign > 0 else -d


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Integer determinant by fraction-free elimination."""
    n = len(rows)
    if n == 0:
        return 1
    A = [list(r) for r in rows]
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
    return sign * A[n - 1][n - 1]


def normalize_sign(p: Polynomial, order: Optional[MonomialOrder] = None) -> Polynomial:
    """Negate ``p`` if its leading coefficient is negative."""
    if p.is_zero():
        return p
    order = order or MonomialOrder.grlex(p.nvars)
    return -p if p.lc(order) < 0 else p


def all_minors(M: PolyMatrix, i: int, table: Optional[MinorTable] = None):
    """Yield ((rows, cols), minor) over every i-square submatrix, 0-based."""
    table = table or MinorTable(M)
    for rows in itertools.combinations(range(M.rows), i):
        for cols in itertools.combinations(range(M.cols), i):
            yield (rows, cols), table.minor(rows, cols)


def minor_generators(G: Digraph, i: int, table: Optional[MinorTable] = None) -> List[Polynomial]:
    """Distinct nonzero i-minors of L(G,X), each with positive leading coefficient.

    Order is that of first appearance in lexicographic (rows, cols)
    enumeration, so the output is deterministic.
    """
    if not 1 <= i <= G.n:
        raise ValueError(f"minor size {i} out of range 1..{G.n}")
    M = generalized_laplacian(G) if table is None else table.M
    seen = set()
    out = []
    for _, p in all_minors(M, i, table):
        if p.is_zero():
            continue
        p = normalize_sign(p)
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


# --------------------------------------------------------------------------
# combinatorial determinant formulas

def det_via_one_factors(D: Digraph) -> int:
    """det(-A(D)) as the signed count of spanning directed 1-factors."""
    return sum(f.weight * (-1) ** f.components for f in directed_one_factors(D))


def det_via_vertex_subsets(D: Digraph) -> Polynomial:
    """det(L(D,X)) assembled from det(-A) of the loopless induced subdigraphs."""
    n = D.n
    acc: Dict = {}
    for r in range(n + 1):
        for U in itertools.combinations(range(1, n + 1), r):
            c = det_via_one_factors(induced(D, U).without_loops()) if U else 1
            if c:
                mono = tuple(0 if v in U else 1 for v in range(1, n + 1))
                acc[mono] = acc.get(mono, 0) + c
    return Polynomial(n, acc)


def matching_polynomial(G: Digraph, vertices: Optional[Sequence[int]] = None, nvars: Optional[int] = None) -> Polynomial:
    """Sum over matchings mu of (-1)^|mu| times the product of uncovered x_v.

    ``vertices`` maps G's vertices to ring variables (default identity),
    which lets a path inside a cycle use the cycle's variables.
    """
    vertices = list(vertices) if vertices is not None else list(G.vertices())
    nvars = nvars if nvars is not None else max(vertices, default=0)
    acc: Dict = {}
    for mu in matchings(G):
        covered = {v for e in mu for v in e}
        mono = [0] * nvars
        for v in G.vertices():
            if v not in covered:
                mono[vertices[v - 1] - 1] += 1
        mono = tuple(mono)
        acc[mono] = acc.get(mono, 0) + (-1) ** len(mu)
    return Polynomial(nvars, acc)


def det_tree(T: Digraph) -> Polynomial:
    """det(L(T,X)) of a forest from its matchings."""
    if not is_forest(T):
        raise GraphError("det_tree needs an acyclic simple graph")
    return matching_polynomial(T, nvars=T.n)


def det_cycle(n: int) -> Polynomial:
    """det(L(C_n,X)): the matching sum of C_n minus 2."""
    if n < 3:
        raise GraphError("det_cycle needs n >= 3")
    from .digraph import cycle

    return matching_polynomial(cycle(n), nvars=n) - 2


def int_matrix_minors(rows: Sequence[Sequence[int]], k: int) -> List[int]:
    """All k-minors of an integer matrix (brute force)."""
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    out = []
    for R in itertools.combinations(range(m), k):
        for C in itertools.combinations(range(ncols), k):
            out.append(int_det([[rows[r][c] for c in C] for r in R]))
    return out


def char_poly_substitution(G: Digraph, which: str = "adjacency") -> Dict[int, Polynomial]:
    """The substitution x_i -> t (adjacency) or x_i -> d_i - t (Laplacian)."""
    t = Polynomial.var(1, 1)
    if which in ("adjacency", "adj"):
        return {i: t for i in G.vertices()}
    if which in ("laplacian", "lap"):
        deg = G.laplacian_degrees()
        return {i: Polynomial.constant(1, deg[i - 1]) - t for i in G.vertices()}
    raise ValueError(f"unknown characteristic polynomial {which!r}")


def kn_closed_form_subsets(n: int) -> Polynomial:
    """Sum over I of (|I| - n + 1) prod_{i in I} x_i."""
    acc = {}
    for r in range(n + 1):
        for I in itertools.combinations(range(n), r):
            c = r - n + 1
            if c:
                acc[tuple(1 if k in I else 0 for k in range(n))] = c
    return Polynomial(n, acc)


__all__ = [
    "PolyMatrix",
    "MinorTable",
    "generalized_laplacian",
    "laplacian_matrix",
    "evaluated_laplacian",
    "contracted_laplacian",
    "submatrix",
    "det",
    "det_bareiss",
    "int_det",
    "minor_generators",
    "all_minors",
    "normalize_sign",
    "det_via_one_factors",
    "det_via_vertex_subsets",
    "matching_polynomial",
    "det_tree",
    "det_cycle",
    "int_matrix_minors",
    "char_poly_substitution",
    "kn_closed_form_subsets",
]
