"""Closed forms for complete graphs, cycles and paths, with their verifiers."""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .critical import CriticalGroup, critical_group
from .digraph import GraphError, complete, complete_minus_star, cycle, path
from .grobner import (
    INTEGERS,
    Budget,
    Ideal,
    buchberger,
    contained_in,
    ideal_equal,
    is_groebner,
    is_reduced,
)
from .polyring import MonomialOrder, Polynomial, prod
from .symlaplace import det, generalized_laplacian, minor_generators, normalize_sign, submatrix


# --------------------------------------------------------------------------
# complete graphs

def _one_plus(n: int, i: int) -> Polynomial:
    return Polynomial.var(n, i) + 1


def kn_det(n: int) -> Polynomial:
    """prod (x_j + 1) - sum_i prod_{j != i} (x_j + 1)."""
    if n < 1:
        raise ValueError("kn_det needs n >= 1")
    factors = [_one_plus(n, j) for j in range(1, n + 1)]
    total = prod(factors, n)
    for i in range(n):
        total = total - prod(factors[:i] + factors[i + 1:], n)
    return total


def kn_basis(n: int, m: int) -> List[Polynomial]:
    """{prod_{i in I} (x_i + 1) : |I| = m - 1}, in lexicographic order of I."""
    if n < 2 or not 1 <= m <= n - 1:
        raise ValueError(f"kn_basis needs n >= 2 and 1 <= m <= n-1, got n={n}, m={m}")
    return [prod([_one_plus(n, i) for i in I], n) for I in itertools.combinations(range(1, n + 1), m - 1)]


def kn_primary_forward_check(n: int, m: int, budget: Optional[Budget] = None) -> bool:
    """Every basis element of I_m(K_n) lies in each <x_i + 1 : i in I>, |I| = n-m+2."""
    if not 2 <= m <= n - 1:
        raise ValueError("the intersection form needs 2 <= m <= n-1")
    basis = kn_basis(n, m)
    order = MonomialOrder.grlex(n)
    for I in itertools.combinations(range(1, n + 1), n - m + 2):
        gb = buchberger(Ideal(n, [_one_plus(n, i) for i in I]), order, budget)
        if not contained_in(basis, gb, budget):
            return False
    return True


def kn_verify(n: int, m: int, budget: Optional[Budget] = None) -> Dict[str, bool]:
    """The basis generates I_m(K_n), passes the pair criterion and is reduced."""
    order = MonomialOrder.grlex(n)
    B = kn_basis(n, m)
    minors = minor_generators(complete(n), m)
    return {
        "ideal_equal": ideal_equal(Ideal(n, minors), Ideal(n, B), order, budget),
        "is_groebner": is_groebner(B, order, INTEGERS, budget),
        "reduced": is_reduced(B, order, INTEGERS),
    }


# --------------------------------------------------------------------------
# complete graph minus a star

def _star_formula(n: int, m: int) -> List[Tuple[int, int]]:
    """(order, multiplicity) pairs as written in the closed form."""
    top = n * (n + 1) * (n - m)
    if m <= n // 2:
        return [(n + 1, n - 2 * m), (n * (n + 1), m - 2), (top, 1)]
    return [(n, 2 * m - n), (n * (n + 1), n - m - 2), (top, 1)]


def _factorint(k: int) -> Dict[int, int]:
    out: Dict[int, int] = {}
    p = 2
    while p * p <= k:
        while k % p == 0:
            out[p] = out.get(p, 0) + 1
            k //= p
        p += 1
    if k > 1:
        out[k] = out.get(k, 0) + 1
    return out


def star_deleted_group(n: int, m: int) -> CriticalGroup:
    """K(K_{n+1} minus the star with m edges) from the closed form.

    Multiplicities in the closed form can be -1 at the ends of the range
    (m = 1 or m = n - 1).  They are read as formal differences of cyclic
    groups: every factor is split into prime-power parts, the counts are
    summed with sign, and the net counts (which must be non-negative) are
    reassembled into invariant factors.
    """
    if not n > m >= 1:
        raise ValueError(f"need n > m >= 1, got n={n}, m={m}")
    counts: Counter = Counter()
    for order, mult in _star_formula(n, m):
        if order <= 1 or mult == 0:
            continue
        for p, e in _factorint(order).items():
            counts[(p, e)] += mult
    per_prime: Dict[int, List[int]] = {}
    for (p, e), c in sorted(counts.items()):
        if c < 0:
            raise ValueError(f"closed form leaves a negative count of Z_{p**e} for n={n}, m={m}")
        per_prime.setdefault(p, []).extend([e] * c)
    length = max((len(v) for v in per_prime.values()), default=0)
    factors = [1] * length
    for p, exps in per_prime.items():
        exps.sort(reverse=True)
        for k, e in enumerate(exps):
            factors[k] *= p**e
    return CriticalGroup(tuple(sorted(f for f in factors if f > 1)), 1)


def star_deleted_det(n: int, m: int) -> int:
    """det L(K_n, d) for d = (n-1 repeated m times, n repeated n-m times)."""
    return n ** (m - 1) * (n + 1) ** (n - m - 1) * (n - m)


def star_deleted_oracle(n: int, m: int) -> CriticalGroup:
    return critical_group(complete_minus_star(n, m))


# --------------------------------------------------------------------------
# cycles

def _mod(i: int, n: int) -> int:
    return (i - 1) % n + 1


@lru_cache(maxsize=None)
def _path_det(start: int, length: int, n: int) -> Polynomial:
    """det of the path v_start, ..., v_{start+length-1} inside C_n (continuant)."""
    prev, cur = Polynomial.constant(n, 0), Polynomial.constant(n, 1)
    for k in range(length):
        x = Polynomial.var(n, _mod(start + k, n))
        prev, cur = cur, x * cur - prev
    return cur


def cycle_p(i: int, s: int, n: int) -> Polynomial:
    """p_{i,s}: det of the path v_i..v_{i+s-2} of C_n, with p_{i,1}=1 and p_{i,s}=-p_{i+s,-s} for s<=0."""
    if n < 3:
        raise GraphError("cycle_p needs n >= 3")
    if s <= 0:
        if s == 0:
            return Polynomial.constant(n, 0)
        return -cycle_p(i + s, -s, n)
    if s > n:
        raise ValueError(f"p_(i,s) is only defined for s <= n, got s={s}")
    if s == 1:
        return Polynomial.constant(n, 1)
    return _path_det(_mod(i, n), s - 1, n)


@lru_cache(maxsize=None)
def _q_minor(i: int, j: int, n: int) -> Polynomial:
    M = submatrix(generalized_laplacian(cycle(n)), [i], [j], mode="delete")
    return normalize_sign(det(M))


def cycle_q(i: int, j: int, n: int, check: bool = False) -> Polynomial:
    """q_{i,j}: the sign-normalized minor of L(C_n,X) without row i and column j.

    Computed from the path sum p_{i+1,j-i} + p_{j+1,n-j+i} (i <= j after
    reducing indices into 1..n).  With ``check`` the matrix minor is also
    computed and compared.  The leading coefficient is +1 under every
    graded order, since all top-degree terms come from path determinants.
    """
    if n < 3:
        raise GraphError("cycle_q needs n >= 3")
    a, b = sorted((_mod(i, n), _mod(j, n)))
    q = cycle_p(a + 1, b - a, n) + cycle_p(b + 1, n - b + a, n)
    if check and q != _q_minor(_mod(i, n), _mod(j, n), n):
        raise AssertionError(f"path-sum and minor disagree for q_({i},{j}) in C_{n}")
    return q


def cycle_min_generators(n: int, k: int) -> List[Polynomial]:
    """F_k = {q_{k-1,k+1}, q_{k,k+2}, q_{k,k+1}}.

    These are det(C_n minus v_{k-1},v_k,v_{k+1}) + x_k,
    det(C_n minus v_k,v_{k+1},v_{k+2}) + x_{k+1} and
    det(C_n minus v_k,v_{k+1}) + 1.
    """
    if n < 4:
        raise GraphError("cycle_min_generators needs n >= 4")
    return [cycle_q(k - 1, k + 1, n), cycle_q(k, k + 2, n), cycle_q(k, k + 1, n)]


def cycle_min_generators_by_deletion(n: int, k: int) -> List[Polynomial]:
    """F_k assembled from path determinants of C_n with consecutive vertices removed."""
    x = lambda i: Polynomial.var(n, _mod(i, n))  # noqa: E731
    return [
        _path_det(_mod(k + 2, n), n - 3, n) + x(k),
        _path_det(_mod(k + 3, n), n - 3, n) + x(k + 1),
        _path_det(_mod(k + 2, n), n - 2, n) + 1,
    ]


def even_cycle_order(n: int) -> MonomialOrder:
    """x_{m-1} > x_m > ... > x_{2m} > x_1 > ... > x_{m-2} for n = 2m."""
    if n % 2 or n < 4:
        raise ValueError("even_cycle_order needs an even n >= 4")
    m = n // 2
    return MonomialOrder.from_variables(list(range(m - 1, n + 1)) + list(range(1, m - 1)))


@dataclass
class CycleBasis:
    n: int
    parity: str
    polynomials: List[Polynomial]
    order: MonomialOrder
    labels: List[Tuple[int, int]] = field(default_factory=list)


def cycle_groebner(n: int) -> CycleBasis:
    """B_1 = {q_{i,i+m+1}} for n = 2m+1, B_0 for n = 2m with its permuted order."""
    if n < 4:
        raise GraphError("cycle_groebner needs n >= 4 (C_3 is K_3)")
    m = n // 2
    if n % 2:
        labels = [(i, _mod(i + m + 1, n)) for i in range(1, n + 1)]
        order = MonomialOrder.grlex(n)
        parity = "odd"
    else:
        labels = [(_mod(i, n), _mod(i + m, n)) for i in range(0, m)]
        labels += [(_mod(i + m, n), _mod(i + 1, n)) for i in range(0, m - 1)]
        order = even_cycle_order(n)
        parity = "even"
    polys = [cycle_q(i, j, n) for i, j in labels]
    return CycleBasis(n, parity, polys, order, labels)


def cycle_ideal_generators(n: int) -> List[Polynomial]:
    return minor_generators(cycle(n), n - 1)


def verify_cycle_basis(cb: CycleBasis, budget: Optional[Budget] = None) -> Dict[str, bool]:
    n = cb.n
    return {
        "is_groebner": is_groebner(cb.polynomials, cb.order, INTEGERS, budget),
        "ideal_equal": ideal_equal(Ideal(n, cycle_ideal_generators(n)), Ideal(n, cb.polynomials), cb.order, budget),
        "reduced": is_reduced(cb.polynomials, cb.order, INTEGERS),
    }


@dataclass
class IdentityReport:
    n: int
    counts: Dict[str, int] = field(default_factory=dict)
    failures: Dict[str, List[tuple]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())

    def _tally(self, name: str, good: bool, where: tuple):
        self.counts[name] = self.counts.get(name, 0) + 1
        self.failures.setdefault(name, [])
        if not good:
            self.failures[name].append(where)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "ok": self.ok,
            "checked": dict(self.counts),
            "failures": {k: [list(w) for w in v] for k, v in self.failures.items()},
        }


def cycle_identity_check(n: int) -> IdentityReport:
    """Check the path-sum form of q, its symmetry, and the three-term recurrences.

    rel2:  q_{i,i+j+s} = p_{i+j,s+1} q_{i,i+j} - p_{i+j+1,s} q_{i,i+j-1}
           for 1 <= i <= n, 2 <= j <= n-1, -j <= s <= n-j.
    rel4:  the two four-term identities, for n >= 6, 0 <= i,s <= n and
           2 <= j,t <= n-2 in their respective s ranges.
    """
    if n < 3:
        raise GraphError("cycle_identity_check needs n >= 3")
    rep = IdentityReport(n)
    p = lambda i, s: cycle_p(i, s, n)  # noqa: E731
    q = lambda i, j: cycle_q(i, j, n)  # noqa: E731
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            rep._tally("minor", q(i, j) == _q_minor(i, j, n), (i, j))
            rep._tally("symmetry", q(i, j) == q(j, i), (i, j))
    for i in range(1, n + 1):
        for j in range(2, n):
            for s in range(-j, n - j + 1):
                rhs = p(i + j, s + 1) * q(i, i + j) - p(i + j + 1, s) * q(i, i + j - 1)
                rep._tally("rel2", q(i, i + j + s) == rhs, (i, j, s))
    if n >= 6:
        for i in range(0, n + 1):
            for j in range(2, n - 1):
                for t in range(2, n - 1):
                    for s in range(0, j):
                        lhs = p(i + s + 1, j - s) * q(i + j - 1, i) - p(i + s + t, n - s - t + 1) * q(i + s, i + s + t)
                        rhs = p(i + s + 1, j - s - 1) * q(i + j, i) - p(i + s + t + 1, n - s - t) * q(i + s, i + s + t - 1)
                        rep._tally("rel4_i", lhs == rhs, (i, j, t, s))
                    for s in range(j, n + 1):
                        lhs = p(i + j, s - j + 1) * q(i, i + j) - p(i + 1, s + t - n) * q(i + s + t - 1, i + s)
                        rhs = p(i + j + 1, s - j) * q(i, i + j - 1) - p(i + 1, s + t - n - 1) * q(i + s + t, i + s)
                        rep._tally("rel4_ii", lhs == rhs, (i, j, t, s))
    return rep


def path_gamma_witness(n: int) -> Polynomial:
    """det L(P_n,X) without row 1 and column n; a unit, so gamma(P_n) >= n-1."""
    if n < 2:
        raise GraphError("path_gamma_witness needs n >= 2")
    return det(submatrix(generalized_laplacian(path(n)), [1], [n], mode="delete"))
