"""Critical ideals, the gamma invariant, evaluations, Smith normal form and critical groups."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .digraph import Digraph, GraphError, disjoint_union, graph_numbers
from .grobner import (
    INTEGERS,
    RATIONALS,
    Budget,
    GroebnerBasis,
    Ideal,
    _mode,
    buchberger,
    contained_in,
    ideal_equal,
)
from .polyring import MonomialOrder, Polynomial
from .symlaplace import (
    MinorTable,
    char_poly_substitution,
    det,
    generalized_laplacian,
    int_matrix_minors,
    laplacian_matrix,
    minor_generators,
)


# --------------------------------------------------------------------------
# critical ideals

def critical_ideal(G: Digraph, i: int, mode: str = INTEGERS, table: Optional[MinorTable] = None) -> Ideal:
    """I_i(G,X): <1> for i <= 0, <0> for i > n, else generated by the i-minors."""
    n = G.n
    if i <= 0:
        return Ideal.unit(n, mode)
    if i > n:
        return Ideal.zero(n, mode)
    return Ideal(n, minor_generators(G, i, table), mode)


def _obviously_trivial(gens: Sequence[Polynomial], mode: str) -> Optional[bool]:
    """Decide triviality without a Gröbner run when possible."""
    for g in gens:
        if g.is_constant() and (mode == RATIONALS or abs(g.constant_value()) == 1):
            return True
    if len(gens) == 1:
        return False
    if not gens:
        return False
    return None


@dataclass
class CriticalLevel:
    i: int
    generators: List[Polynomial]
    basis: Optional[GroebnerBasis]
    trivial: bool


@dataclass
class CriticalIdealChain:
    graph: Digraph
    mode: str
    levels: List[CriticalLevel] = field(default_factory=list)

    @property
    def gamma(self) -> int:
        g = 0
        for lv in self.levels:
            if not lv.trivial:
                break
            g = lv.i
        return g

    def level(self, i: int) -> CriticalLevel:
        return self.levels[i - 1]


def critical_basis(
    G: Digraph,
    i: int,
    mode: str = INTEGERS,
    order: Optional[MonomialOrder] = None,
    budget: Optional[Budget] = None,
    table: Optional[MinorTable] = None,
) -> GroebnerBasis:
    """Reduced strong Gröbner basis of I_i(G,X)."""
    ideal = critical_ideal(G, i, mode, table)
    order = order or MonomialOrder.grlex(G.n)
    return buchberger(ideal, order, budget)


def ideal_chain(
    G: Digraph,
    mode: str = INTEGERS,
    budget: Optional[Budget] = None,
    groebner: bool = True,
) -> CriticalIdealChain:
    """All levels I_1..I_n with bases (when ``groebner``) and triviality flags."""
    mode = _mode(mode)
    budget = budget if budget is not None else Budget()
    table = MinorTable(generalized_laplacian(G))
    order = MonomialOrder.grlex(G.n)
    chain = CriticalIdealChain(G, mode)
    for i in range(1, G.n + 1):
        ideal = critical_ideal(G, i, mode, table)
        basis = None
        trivial = _obviously_trivial(ideal.generators, mode)
        if groebner or trivial is None:
            basis = buchberger(ideal, order, budget)
            trivial = basis.is_trivial()
        chain.levels.append(CriticalLevel(i, ideal.generators, basis, trivial))
    return chain


def is_trivial_level(G: Digraph, i: int, mode: str = INTEGERS, budget: Optional[Budget] = None,
                     table: Optional[MinorTable] = None) -> bool:
    if i <= 0:
        return True
    if i > G.n:
        return False
    gens = minor_generators(G, i, table)
    quick = _obviously_trivial(gens, mode)
    if quick is not None:
        return quick
    order = MonomialOrder.grlex(G.n)
    return buchberger(Ideal(G.n, gens, mode), order, budget).is_trivial()


def gamma(G: Digraph, mode: str = INTEGERS, budget: Optional[Budget] = None) -> int:
    """Largest i with I_i(G,X) = <1>, by an ascending scan."""
    mode = _mode(mode)
    budget = budget if budget is not None else Budget()
    table = MinorTable(generalized_laplacian(G))
    g = 0
    for i in range(1, G.n + 1):
        if not is_trivial_level(G, i, mode, budget, table):
            break
        g = i
    return g


@dataclass
class BoundsReport:
    n: int
    gamma: int
    alpha: int
    omega: int
    deletion_gammas: List[int]
    clique_bound: int
    stability_bound: int

    @property
    def clique_ok(self) -> bool:
        return self.gamma <= self.clique_bound

    @property
    def stability_ok(self) -> bool:
        return self.gamma <= self.stability_bound

    @property
    def deletion_ok(self) -> bool:
        return all(self.gamma - g <= 2 for g in self.deletion_gammas)

    @property
    def ok(self) -> bool:
        return self.clique_ok and self.stability_ok and self.deletion_ok

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "gamma": self.gamma,
            "alpha": self.alpha,
            "omega": self.omega,
            "clique_bound": self.clique_bound,
            "stability_bound": self.stability_bound,
            "deletion_gammas": self.deletion_gammas,
            "clique_ok": self.clique_ok,
            "stability_ok": self.stability_ok,
            "deletion_ok": self.deletion_ok,
        }


def gamma_bounds_check(G: Digraph, mode: str = INTEGERS, budget: Optional[Budget] = None) -> BoundsReport:
    """gamma against 2(n - omega) + 1, 2(n - alpha) and the one-vertex deletion bound."""
    G.require_simple()
    budget = budget if budget is not None else Budget()
    nums = graph_numbers(G)
    g = gamma(G, mode, budget)
    dels = [gamma(G.delete_vertex(v), mode, budget) for v in G.vertices()] if G.n > 1 else []
    return BoundsReport(
        n=G.n,
        gamma=g,
        alpha=nums.alpha,
        omega=nums.omega,
        deletion_gammas=dels,
        clique_bound=2 * (G.n - nums.omega) + 1,
        stability_bound=2 * (G.n - nums.alpha),
    )


# --------------------------------------------------------------------------
# Smith normal form and critical groups

@dataclass(frozen=True)
class SmithDecomposition:
    diagonal: Tuple[int, ...]
    rank: int
    rows: int = 0
    cols: int = 0

    @property
    def invariant_factors(self) -> Tuple[int, ...]:
        return self.diagonal

    def prefix_product(self, k: int) -> int:
        """Product of the first k diagonal entries (the k-th determinantal divisor)."""
        p = 1
        for d in self.diagonal[:k]:
            p *= d
        return p


def smith_normal_form(M: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Diagonal d_1 | d_2 | ... of an integer matrix by unimodular reduction.

    The pivot is the nonzero entry of least absolute value in the remaining
    block, first in row-major order.
    """
    A = [[int(v) for v in row] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    k = min(m, n)
    diag: List[int] = []
    t = 0
    while t < k:
        pos = _pivot(A, t, m, n)
        if pos is None:
            break
        while True:
            i0, j0 = pos
            A[t], A[i0] = A[i0], A[t]
            if j0 != t:
                for row in A:
                    row[t], row[j0] = row[j0], row[t]
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    if q:
                        Ai, At = A[i], A[t]
                        for j in range(t, n):
                            Ai[j] -= q * At[j]
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    if q:
                        for i in range(t, m):
                            A[i][j] -= q * A[i][t]
                    if A[t][j]:
                        clean = False
            if clean:
                bad = next(
                    (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                A[t] = [a + b for a, b in zip(A[t], A[bad])]
            pos = _pivot(A, t, m, n)
        diag.append(abs(A[t][t]))
        t += 1
    rank = len(diag)
    diag.extend([0] * (k - rank))
    return SmithDecomposition(tuple(diag), rank, m, n)


def _pivot(A, t, m, n):
    best = None
    bv = 0
    for i in range(t, m):
        row = A[i]
        for j in range(t, n):
            v = abs(row[j])
            if v and (best is None or v < bv):
                best, bv = (i, j), v
                if v == 1:
                    return best
    return best


@dataclass(frozen=True)
class CriticalGroup:
    invariant_factors: Tuple[int, ...]
    free_rank: int = 0

    @property
    def order(self) -> int:
        p = 1
        for f in self.invariant_factors:
            p *= f
        return p

    def __str__(self):
        parts = [f"Z_{f}" for f in self.invariant_factors]
        parts += ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"invariant_factors": list(self.invariant_factors), "free_rank": self.free_rank, "order": self.order}


def group_from_matrix(M: Sequence[Sequence[int]]) -> CriticalGroup:
    """Cokernel of M: torsion invariant factors > 1 and free rank."""
    snf = smith_normal_form(M)
    torsion = tuple(d for d in snf.diagonal if d > 1)
    return CriticalGroup(torsion, snf.rows - snf.rank)


def critical_group(G: Digraph, reduced_at: Optional[int] = None) -> CriticalGroup:
    """Torsion of coker L(G).

    With ``reduced_at=v`` the group is read from the reduced Laplacian
    L(G) minus row and column v, which is only offered for connected
    Eulerian digraphs.  ``free_rank`` always describes the full cokernel.
    """
    L = laplacian_matrix(G)
    full = group_from_matrix(L)
    if reduced_at is None:
        return full
    v = reduced_at
    if not 1 <= v <= G.n:
        raise GraphError(f"vertex {v} out of range 1..{G.n}")
    if not (G.is_eulerian() and G.is_weakly_connected()):
        raise GraphError("the reduced Laplacian route needs a connected Eulerian digraph")
    R = [[L[i][j] for j in range(G.n) if j != v - 1] for i in range(G.n) if i != v - 1]
    red = group_from_matrix(R) if R else CriticalGroup(())
    return CriticalGroup(red.invariant_factors, full.free_rank)


def evaluate_ideal(G: Digraph, i: int, d: Sequence[int]) -> int:
    """Non-negative generator of I_i(G,d) in Z: the i-th determinantal divisor of L(G,d)."""
    if len(d) != G.n:
        raise ValueError(f"degree vector has length {len(d)}, expected {G.n}")
    if i <= 0:
        return 1
    if i > G.n:
        return 0
    return smith_normal_form(evaluated_matrix(G, d)).prefix_product(i)


def evaluate_ideal_by_minors(G: Digraph, i: int, d: Sequence[int]) -> int:
    """Same value as :func:`evaluate_ideal`, as the gcd of all integer i-minors."""
    if i <= 0:
        return 1
    if i > G.n:
        return 0
    g = 0
    for v in int_matrix_minors(evaluated_matrix(G, d), i):
        g = gcd(g, v)
    return g


def evaluated_matrix(G: Digraph, d: Sequence[int]) -> List[List[int]]:
    n = G.n
    return [[int(d[u]) if u == v else -G.mult(u + 1, v + 1) for v in range(n)] for u in range(n)]


def evaluation_factors(G: Digraph, d: Sequence[int]) -> Tuple[int, ...]:
    """Invariant factors f_1..f_n of L(G,d)."""
    return smith_normal_form(evaluated_matrix(G, d)).diagonal


# --------------------------------------------------------------------------
# x_j = t substitutions

def _require_loopless(G: Digraph):
    if G.has_loops():
        raise GraphError("t-substitution needs a loopless digraph")


def t_ideal(G: Digraph, i: int, mode: str = INTEGERS, budget: Optional[Budget] = None) -> Ideal:
    """I_i(G,t): every x_j replaced by t, then a reduced basis over Z[t] or Q[t].

    In rational mode the basis is the single gcd generator.
    """
    _require_loopless(G)
    mode = _mode(mode)
    if i <= 0:
        return Ideal.unit(1, mode)
    if i > G.n:
        return Ideal.zero(1, mode)
    sub = char_poly_substitution(G, "adjacency")
    gens = [g.substitute(sub, nvars=1) for g in minor_generators(G, i)]
    ideal = Ideal(1, gens, mode)
    if ideal.is_zero_ideal():
        return ideal
    gb = buchberger(ideal, MonomialOrder.grlex(1), budget)
    return Ideal(1, gb.basis, mode)


def char_poly(G: Digraph, which: str = "adjacency") -> Polynomial:
    """det(L(G,X)) under x_i = t (adjacency) or x_i = d_i - t (Laplacian)."""
    _require_loopless(G)
    return det(generalized_laplacian(G)).substitute(char_poly_substitution(G, which), nvars=1)


# --------------------------------------------------------------------------
# structural certificates

def _embed(p: Polynomial, index_map: Dict[int, int], nvars: int) -> Polynomial:
    return p.substitute({a: Polynomial.var(nvars, b) for a, b in index_map.items()}, nvars=nvars)


@dataclass
class StructureReport:
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> List[str]:
        return [k for k, v in self.checks.items() if not v]

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": dict(self.checks)}


def verify_structure(
    G: Digraph,
    union_of: Optional[Tuple[Digraph, Digraph]] = None,
    budget: Optional[Budget] = None,
    modes: Sequence[str] = (INTEGERS, RATIONALS),
) -> StructureReport:
    """Certify the ideal chain, induced-subgraph containment and related facts.

    Checks, for each coefficient mode:
      chain: I_{i+1} is contained in I_i;
      nonzero: I_n is not the zero ideal;
      induced: I_k(G minus v) is contained in I_k(G) for each v;
      evaluation: SNF prefix products equal gcds of evaluated generators at
        the Laplacian degree vector;
      union: equality with the product formula when ``union_of`` is given.
    Mode-independent checks cover the reduced-Laplacian route for connected
    Eulerian digraphs, gamma_Z <= gamma_Q and gamma_Z <= number of unit
    invariant factors.
    """
    budget = budget if budget is not None else Budget()
    report = StructureReport()
    n = G.n
    order = MonomialOrder.grlex(n)
    chains = {}
    for mode in modes:
        mode = _mode(mode)
        tag = "z" if mode == INTEGERS else "q"
        chain = ideal_chain(G, mode, budget)
        chains[mode] = chain
        ok = True
        for i in range(1, n):
            if not contained_in(chain.level(i + 1).generators, chain.level(i).basis, budget):
                ok = False
        report.checks[f"chain[{tag}]"] = ok
        report.checks[f"nonzero[{tag}]"] = n == 0 or bool(chain.level(n).generators)
        flags = [lv.trivial for lv in chain.levels]
        report.checks[f"trivial_downward_closed[{tag}]"] = all(
            not flags[i + 1] or flags[i] for i in range(len(flags) - 1)
        )
        ok = True
        for v in G.vertices() if n > 1 else []:
            H = G.delete_vertex(v)
            imap = {j: (j if j < v else j + 1) for j in range(1, n)}
            for k in range(1, n):
                gens = [_embed(p, imap, n) for p in minor_generators(H, k)]
                if not contained_in(gens, chain.level(k).basis, budget):
                    ok = False
        report.checks[f"induced[{tag}]"] = ok
        if union_of is not None:
            report.checks[f"union[{tag}]"] = _check_union(G, union_of, mode, order, budget)

    d = G.laplacian_degrees()
    snf = smith_normal_form(evaluated_matrix(G, d))
    ok = True
    for i in range(1, n + 1):
        g = 0
        for p in minor_generators(G, i):
            g = gcd(g, p.evaluate(d))
        if g != snf.prefix_product(i):
            ok = False
    report.checks["evaluation"] = ok

    if n > 1 and G.is_eulerian() and G.is_weakly_connected():
        full = critical_group(G)
        ok = all(critical_group(G, reduced_at=v).invariant_factors == full.invariant_factors for v in G.vertices())
        # torsion of L(G \ v, d_G(G \ v)) matches as well
        for v in G.vertices():
            dv = [d[j - 1] for j in G.vertices() if j != v]
            red = group_from_matrix(evaluated_matrix(G.delete_vertex(v), dv))
            ok = ok and red.invariant_factors == full.invariant_factors
        report.checks["reduced_laplacian"] = ok

    if INTEGERS in chains and RATIONALS in chains:
        gz, gq = chains[INTEGERS].gamma, chains[RATIONALS].gamma
        report.checks["gamma_z_le_gamma_q"] = gz <= gq
    if INTEGERS in chains:
        ones = sum(1 for f in snf.diagonal if f == 1)
        report.checks["gamma_le_unit_factors"] = chains[INTEGERS].gamma <= ones
    return report


def union_product_generators(A: Digraph, B: Digraph, i: int) -> List[Polynomial]:
    """Generators of <U_j I_j(A) I_{i-j}(B)> inside the ring of A disjoint-union B."""
    n = A.n + B.n
    amap = {j: j for j in range(1, A.n + 1)}
    bmap = {j: A.n + j for j in range(1, B.n + 1)}
    out = []
    for j in range(0, i + 1):
        ga = critical_ideal(A, j).generators
        gb = critical_ideal(B, i - j).generators
        ga = [_embed(p, amap, n) for p in ga]
        gb = [_embed(p, bmap, n) for p in gb]
        out.extend(a * b for a in ga for b in gb)
    return out


def _check_union(G, parts, mode, order, budget) -> bool:
    A, B = parts
    if disjoint_union(A, B) != G:
        return False
    for i in range(1, G.n + 1):
        lhs = critical_ideal(G, i, mode)
        rhs = Ideal(G.n, union_product_generators(A, B, i), mode)
        if not ideal_equal(lhs, rhs, order, budget):
            return False
    return True
