"""Strong Gröbner bases over Z, with a field mode for Q.

Integer mode implements strong bases over a Euclidean domain: a term
``c*X`` is reducible by ``b`` when ``lm(b)`` divides ``X`` and the Euclidean
quotient ``c // lc(b)`` is nonzero, and completion processes both
S-polynomials and GCD-polynomials.  With every leading coefficient equal to 1
this is ordinary Buchberger.

Field mode keeps primitive integer polynomials and works up to rational
scalars, so results are the Q-basis elements cleared of denominators.
"""
from __future__ import annotations

import heapq
import os
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .polyring import Monomial, MonomialOrder, Polynomial, mono_divides, mono_lcm

INTEGERS = "integers"
RATIONALS = "rationals"
MODES = (INTEGERS, RATIONALS)

DEFAULT_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    """Raised when a computation uses more reduction steps than allowed."""


class Budget:
    """Shared counter of reduction steps."""

    def __init__(self, limit: Optional[int] = None):
        if limit is None:
            limit = int(os.environ.get("CRITIDEAL_BUDGET", DEFAULT_BUDGET))
        self.limit = limit
        self.used = 0

    def spend(self, k: int = 1):
        self.used += k
        if self.used > self.limit:
            raise BudgetExceeded(f"reduction budget of {self.limit} steps exhausted")


def _mode(mode: str) -> str:
    aliases = {"z": INTEGERS, "q": RATIONALS, "Z": INTEGERS, "Q": RATIONALS}
    mode = aliases.get(mode, mode)
    if mode not in MODES:
        raise ValueError(f"unknown coefficient mode {mode!r}")
    return mode


def normalize(p: Polynomial, order: MonomialOrder, mode: str = INTEGERS) -> Polynomial:
    """Positive leading coefficient; in field mode also content 1."""
    if p.is_zero():
        return p
    if mode == RATIONALS:
        c = p.content()
        if c != 1:
            p = p.exact_div_int(c)
    return -p if p.lc(order) < 0 else p


@dataclass
class Ideal:
    """Finitely generated ideal of Z[x1..xn] (or Q[x1..xn] in field mode)."""

    nvars: int
    generators: List[Polynomial]
    mode: str = INTEGERS

    def __post_init__(self):
        self.mode = _mode(self.mode)
        seen = set()
        gens = []
        for g in self.generators:
            if isinstance(g, int):
                g = Polynomial.constant(self.nvars, g)
            if g.nvars != self.nvars:
                raise ValueError("generator from a different ring")
            if g.is_zero():
                continue
            key = g if g.lc(MonomialOrder.grlex(self.nvars)) > 0 else -g
            if key not in seen:
                seen.add(key)
                gens.append(g)
        self.generators = gens

    @classmethod
    def unit(cls, nvars: int, mode: str = INTEGERS) -> "Ideal":
        return cls(nvars, [Polynomial.constant(nvars, 1)], mode)

    @classmethod
    def zero(cls, nvars: int, mode: str = INTEGERS) -> "Ideal":
        return cls(nvars, [], mode)

    def is_zero_ideal(self) -> bool:
        return not self.generators


# --------------------------------------------------------------------------
# reduction

class _Reducer:
    """Basis element prepared for repeated use in reduction."""

    __slots__ = ("poly", "lm", "lc", "terms")

    def __init__(self, poly: Polynomial, order: MonomialOrder):
        lt = poly.leading(order)
        if lt.coefficient < 0:
            poly = -poly
            lt = poly.leading(order)
        self.poly = poly
        self.lm = lt.monomial
        self.lc = lt.coefficient
        self.terms = [(m, c) for m, c in poly.items() if m != self.lm]


@dataclass
class ReductionRecord:
    """Witness of a reduction: ``multiplier*f == sum(q_i*b_i) + remainder``."""

    remainder: Polynomial
    quotients: List[Polynomial]
    multiplier: int = 1


def _reduce_terms(
    f: Dict[Monomial, int],
    reducers: Sequence[_Reducer],
    order: MonomialOrder,
    mode: str,
    budget: Optional[Budget],
    quotients: Optional[List[Dict[Monomial, int]]] = None,
    skip_lead: bool = False,
) -> Tuple[Dict[Monomial, int], int]:
    """Fully reduce the term dict ``f`` (consumed) and return (remainder, multiplier)."""
    key = order.key
    heap = [(_neg(key(m)), m) for m in f]
    heapq.heapify(heap)
    queued = set(f)
    result: Dict[Monomial, int] = {}
    multiplier = 1
    first = skip_lead
    while heap:
        _, mono = heapq.heappop(heap)
        queued.discard(mono)
        c = f.pop(mono, 0)
        if not c:
            continue
        if first:
            first = False
            result[mono] = c
            continue
        for idx, r in enumerate(reducers):
            if not mono_divides(r.lm, mono):
                continue
            shift = tuple(a - b for a, b in zip(mono, r.lm))
            if mode == INTEGERS:
                q = c // r.lc
                if q == 0:
                    continue
                c -= q * r.lc
            else:
                g = gcd(c, r.lc)
                scale = r.lc // g
                q = c // g
                if scale != 1:
                    multiplier *= scale
                    for m in f:
                        f[m] *= scale
                    for m in result:
                        result[m] *= scale
                    if quotients is not None:
                        for qd in quotients:
                            for m in qd:
                                qd[m] *= scale
                c = 0
            if budget is not None:
                budget.spend()
            if quotients is not None:
                qd = quotients[idx]
                qd[shift] = qd.get(shift, 0) + q
            for m, v in r.terms:
                mm = tuple(a + b for a, b in zip(m, shift))
                nv = f.get(mm, 0) - q * v
                if nv:
                    f[mm] = nv
                    if mm not in queued:
                        queued.add(mm)
                        heapq.heappush(heap, (_neg(key(mm)), mm))
                else:
                    f.pop(mm, None)
            if c == 0:
                break
        if c:
            result[mono] = c
    return result, multiplier


def _neg(k: tuple) -> tuple:
    return tuple(-x for x in k)


def strong_reduce(
    f: Polynomial,
    B: Sequence[Polynomial],
    order: MonomialOrder,
    mode: str = INTEGERS,
    budget: Optional[Budget] = None,
) -> Polynomial:
    """Normal form of ``f`` modulo ``B``.

    No term of the result is reducible by an element of ``B``.  In integer
    mode coefficients are replaced by their non-negative remainder modulo
    the reducer's leading coefficient.  In field mode the result is only
    defined up to a nonzero rational factor.
    """
    mode = _mode(mode)
    reducers = [_Reducer(b, order) for b in B if not b.is_zero()]
    terms, _ = _reduce_terms(dict(f.items()), reducers, order, mode, budget)
    return Polynomial(f.nvars, terms)


def reduce_with_witness(
    f: Polynomial,
    B: Sequence[Polynomial],
    order: MonomialOrder,
    mode: str = INTEGERS,
    budget: Optional[Budget] = None,
) -> ReductionRecord:
    """Reduce and also return cofactors q_i with ``m*f = sum q_i*B[i] + f*``."""
    mode = _mode(mode)
    idx = [i for i, b in enumerate(B) if not b.is_zero()]
    reducers = [_Reducer(B[i], order) for i in idx]
    quot: List[Dict[Monomial, int]] = [{} for _ in reducers]
    terms, mult = _reduce_terms(dict(f.items()), reducers, order, mode, budget, quot)
    quotients = [Polynomial.zero(f.nvars) for _ in B]
    for k, i in enumerate(idx):
        q = Polynomial(f.nvars, quot[k])
        # reducers may have been negated to make lc positive
        quotients[i] = q if reducers[k].poly == B[i] else -q
    return ReductionRecord(Polynomial(f.nvars, terms), quotients, mult)


# --------------------------------------------------------------------------
# critical pairs

def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    """(c/c_f)(X/X_f) f - (c/c_g)(X/X_g) g with X, c the lcms of leading data."""
    if f.is_zero() or g.is_zero():
        raise ValueError("S-polynomial of a zero polynomial")
    lf, lg = f.leading(order), g.leading(order)
    X = mono_lcm(lf.monomial, lg.monomial)
    c = abs(lf.coefficient * lg.coefficient) // gcd(lf.coefficient, lg.coefficient)
    sf = tuple(a - b for a, b in zip(X, lf.monomial))
    sg = tuple(a - b for a, b in zip(X, lg.monomial))
    return f.mul_term(c // lf.coefficient, sf) - g.mul_term(c // lg.coefficient, sg)


def bezout(a: int, b: int) -> Tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b) > 0 and |s| minimal."""
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0)")
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    g, s0 = old_r, old_s
    if g < 0:
        g, s0 = -g, -s0
    if b == 0:
        return g, s0, 0
    period = abs(b) // g
    s_min = s0 % period
    if 2 * s_min > period:
        s_min -= period
    t_min = (g - s_min * a) // b
    return g, s_min, t_min


def g_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    """a (X/X_f) f + b (X/X_g) g where a*c_f + b*c_g = gcd(c_f, c_g)."""
    if f.is_zero() or g.is_zero():
        raise ValueError("G-polynomial of a zero polynomial")
    lf, lg = f.leading(order), g.leading(order)
    X = mono_lcm(lf.monomial, lg.monomial)
    _, a, b = bezout(lf.coefficient, lg.coefficient)
    sf = tuple(x - y for x, y in zip(X, lf.monomial))
    sg = tuple(x - y for x, y in zip(X, lg.monomial))
    return f.mul_term(a, sf) + g.mul_term(b, sg)


def _needs_gpoly(cf: int, cg: int) -> bool:
    return cf % cg != 0 and cg % cf != 0


def _coprime_monomials(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


# --------------------------------------------------------------------------
# completion

@dataclass
class GroebnerBasis:
    basis: List[Polynomial]
    order: MonomialOrder
    mode: str = INTEGERS
    reduced: bool = False
    nvars: int = field(default=0)

    def __post_init__(self):
        if not self.nvars:
            self.nvars = self.order.nvars

    def reduce(self, f: Polynomial, budget: Optional[Budget] = None) -> Polynomial:
        return strong_reduce(f, self.basis, self.order, self.mode, budget)

    def contains(self, f: Polynomial, budget: Optional[Budget] = None) -> bool:
        return is_member(f, self, budget)

    def is_trivial(self) -> bool:
        return is_trivial(self)

    def ideal(self) -> Ideal:
        return Ideal(self.nvars, list(self.basis), self.mode)


def buchberger(
    ideal: Ideal,
    order: MonomialOrder,
    budget: Optional[Budget] = None,
    reduce: bool = True,
) -> GroebnerBasis:
    """Complete the generators of ``ideal`` to a strong Gröbner basis.

    Generators and critical pairs share one queue processed smallest-lcm
    first (normal strategy); ties go to the earlier entry.  With ``reduce``
    the result is inter-reduced by :func:`minimize_basis`.
    """
    mode = ideal.mode
    budget = budget if budget is not None else Budget()
    nvars = ideal.nvars
    if order.nvars != nvars:
        raise ValueError("order and ideal have different variable counts")
    G: List[_Reducer] = []
    queue: list = []
    seq = 0

    def push(k, kind, a, b=None):
        nonlocal seq
        heapq.heappush(queue, (k, seq, kind, a, b))
        seq += 1

    for p in ideal.generators:
        p = normalize(p, order, mode)
        push(order.key(p.lm(order)), "gen", p)

    unit_found = False
    while queue and not unit_found:
        _, _, kind, a, b = heapq.heappop(queue)
        if kind == "gen":
            h = a
        elif kind == "S":
            h = s_polynomial(G[a].poly, G[b].poly, order)
        else:
            h = g_polynomial(G[a].poly, G[b].poly, order)
        budget.spend()
        if h.is_zero():
            continue
        terms, _ = _reduce_terms(dict(h.items()), G, order, mode, budget)
        if not terms:
            continue
        h = normalize(Polynomial(nvars, terms), order, mode)
        r = _Reducer(h, order)
        k = len(G)
        for i, gi in enumerate(G):
            X = mono_lcm(gi.lm, r.lm)
            lcm_key = order.key(X)
            coprime = _coprime_monomials(gi.lm, r.lm)
            if not (coprime and gcd(gi.lc, r.lc) == 1):
                push(lcm_key, "S", i, k)
            if mode == INTEGERS and _needs_gpoly(gi.lc, r.lc):
                push(lcm_key, "G", i, k)
        G.append(r)
        if h.is_constant() and (mode == RATIONALS or h.constant_value() == 1):
            unit_found = True

    if unit_found:
        gb = GroebnerBasis([Polynomial.constant(nvars, 1)], order, mode, reduced=True, nvars=nvars)
        return gb
    gb = GroebnerBasis([r.poly for r in G], order, mode, reduced=False, nvars=nvars)
    return minimize_basis(gb, budget) if reduce else gb


def minimize_basis(B: GroebnerBasis, budget: Optional[Budget] = None) -> GroebnerBasis:
    """Drop redundant elements and inter-reduce tails.

    An element is redundant when another element's leading term divides its
    leading term (monomial and, in integer mode, coefficient).  The result is
    sorted by leading monomial, largest first.
    """
    order, mode = B.order, B.mode
    polys = [normalize(p, order, mode) for p in B.basis if not p.is_zero()]
    if any(p.is_constant() and (mode == RATIONALS or p.constant_value() == 1) for p in polys):
        return GroebnerBasis([Polynomial.constant(B.nvars, 1)], order, mode, True, B.nvars)
    keep: List[Polynomial] = []
    # process smallest leading terms first so divisors are seen before multiples
    polys.sort(key=lambda p: (order.key(p.lm(order)), p.lc(order)))
    for p in polys:
        lt = p.leading(order)
        if any(_lt_divides(q.leading(order), lt, mode) for q in keep):
            continue
        keep.append(p)
    out = []
    for i, p in enumerate(keep):
        others = [_Reducer(q, order) for j, q in enumerate(keep) if j != i]
        terms, _ = _reduce_terms(dict(p.items()), others, order, mode, budget, skip_lead=True)
        out.append(normalize(Polynomial(B.nvars, terms), order, mode))
    out.sort(key=lambda p: order.key(p.lm(order)), reverse=True)
    return GroebnerBasis(out, order, mode, is_reduced(out, order, mode), B.nvars)


def _lt_divides(a, b, mode) -> bool:
    if not mono_divides(a.monomial, b.monomial):
        return False
    return mode == RATIONALS or b.coefficient % a.coefficient == 0


def is_reduced(B: Sequence[Polynomial], order: MonomialOrder, mode: str = INTEGERS) -> bool:
    """Leading coefficients 1 and no term of b_i divisible by lt(b_j), i != j.

    Divisibility of a term needs both monomial and (integer mode) coefficient
    divisibility.  In field mode leading coefficients are units, so only
    monomial divisibility is checked.
    """
    mode = _mode(mode)
    leads = [b.leading(order) for b in B]
    if mode == INTEGERS and any(lt.coefficient != 1 for lt in leads):
        return False
    for i, b in enumerate(B):
        for j, lt in enumerate(leads):
            if i == j:
                continue
            for m, c in b.items():
                if mono_divides(lt.monomial, m) and (mode == RATIONALS or c % lt.coefficient == 0):
                    return False
    return True


def groebner(
    generators: Sequence[Polynomial],
    order: Optional[MonomialOrder] = None,
    mode: str = INTEGERS,
    budget: Optional[Budget] = None,
    nvars: Optional[int] = None,
) -> GroebnerBasis:
    """Convenience wrapper: reduced strong Gröbner basis of ``generators``."""
    if nvars is None:
        if not generators:
            raise ValueError("nvars needed for an empty generator list")
        nvars = generators[0].nvars
    order = order or MonomialOrder.grlex(nvars)
    return buchberger(Ideal(nvars, list(generators), mode), order, budget)


def is_member(f: Polynomial, B: GroebnerBasis, budget: Optional[Budget] = None) -> bool:
    return B.reduce(f, budget).is_zero()


def is_trivial(B: GroebnerBasis) -> bool:
    """True iff the ideal is the whole ring."""
    return is_member(Polynomial.constant(B.nvars, 1), B)


def is_groebner(
    B: Sequence[Polynomial],
    order: MonomialOrder,
    mode: str = INTEGERS,
    budget: Optional[Budget] = None,
) -> bool:
    """Check every S-polynomial (and in integer mode G-polynomial) reduces to 0."""
    mode = _mode(mode)
    B = [b for b in B if not b.is_zero()]
    for i in range(len(B)):
        for j in range(i + 1, len(B)):
            if not strong_reduce(s_polynomial(B[i], B[j], order), B, order, mode, budget).is_zero():
                return False
            if mode == INTEGERS:
                if not strong_reduce(g_polynomial(B[i], B[j], order), B, order, mode, budget).is_zero():
                    return False
    return True


def contained_in(A: Sequence[Polynomial], B: GroebnerBasis, budget: Optional[Budget] = None) -> bool:
    """Every polynomial of ``A`` lies in the ideal with basis ``B``."""
    return all(is_member(a, B, budget) for a in A)


def ideal_equal(
    A: Ideal,
    B: Ideal,
    order: Optional[MonomialOrder] = None,
    budget: Optional[Budget] = None,
) -> bool:
    if A.nvars != B.nvars or A.mode != B.mode:
        raise ValueError("ideals live in different rings")
    order = order or MonomialOrder.grlex(A.nvars)
    gb_b = buchberger(B, order, budget)
    if not contained_in(A.generators, gb_b, budget):
        return False
    gb_a = buchberger(A, order, budget)
    return contained_in(B.generators, gb_a, budget)
