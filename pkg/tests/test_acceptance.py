"""The ten acceptance criteria, each checked at literal equality.

Every test records a one-line PASS/FAIL verdict in ``VERDICTS``; the
terminal summary hook in conftest.py prints them after the run, and running
this file directly prints them as well.
"""
import itertools
import random
import time
from math import gcd

import pytest

from critideal.critical import (
    critical_group,
    critical_ideal,
    gamma,
    gamma_bounds_check,
    ideal_chain,
    smith_normal_form,
    t_ideal,
    verify_structure,
)
from critideal.digraph import (
    NAMED_GRAPHS,
    Digraph,
    complete,
    complete_minus_matching,
    cone,
    cycle,
    disjoint_union,
    path,
    trivial,
)
from critideal.families import (
    cycle_groebner,
    cycle_identity_check,
    cycle_ideal_generators,
    cycle_min_generators,
    cycle_q,
    kn_det,
    kn_verify,
    star_deleted_group,
    star_deleted_oracle,
    verify_cycle_basis,
)
from critideal.grobner import (
    INTEGERS,
    RATIONALS,
    Ideal,
    buchberger,
    groebner,
    ideal_equal,
    is_groebner,
    reduce_with_witness,
)
from critideal.polyring import MonomialOrder, Polynomial, canonical_string, prod
from critideal.symlaplace import det, det_via_vertex_subsets, generalized_laplacian, laplacian_matrix

from conftest import P, from_tex, random_digraph, random_graph

VERDICTS = {}


def record(number, title, failures, started):
    ok = not failures
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}  ({time.perf_counter() - started:.1f}s)"
    if failures:
        line += "  failing: " + "; ".join(failures[:6])
        if len(failures) > 6:
            line += f"; ... {len(failures) - 6} more"
    VERDICTS[number] = line
    print(line)
    assert ok, line


def T(text):
    return from_tex(text, 1, var="t")


# ---------------------------------------------------------------- 1

def h_reference_ideals():
    n = 6
    H = complete_minus_matching(n)
    x = [None] + [Polynomial.var(n, i) for i in range(1, n + 1)]
    one = Polynomial.constant(n, 1)
    edges = H.edges()
    non_edges = [(r, s) for r, s in itertools.combinations(range(1, n + 1), 2) if not H.adjacent(r, s)]
    # S: a non-edge rs with an edge kl disjoint from it
    S = [(r, s, k, l) for r, s in non_edges for k, l in edges if not {r, s} & {k, l}]
    triangles = [t for t in itertools.combinations(range(1, n + 1), 3) if all(H.adjacent(a, b) for a, b in itertools.combinations(t, 2))]

    def p(r, s, k, l):
        return (x[r] + x[s]) * (x[k] + x[l] + x[k] * x[l]) + (x[k] + x[l]) * (x[r] + x[s] + x[r] * x[s])

    i3 = [Polynomial.constant(n, 2)] + x[1:]
    i4 = [x[r] * x[s] for r, s in edges] + [2 * x[r] + 2 * x[s] + x[r] * x[s] for r, s in non_edges]
    i5 = [x[k] * x[l] * (x[r] + x[s] + x[r] * x[s]) for r, s, k, l in S]
    i5 += [p(r, s, k, l) for (r, s), (k, l) in itertools.permutations(non_edges, 2)]
    quads = {frozenset(q) for q in S}
    d = prod(x[1:], n)
    d -= sum((prod([x[v] for v in q], n) for q in quads), Polynomial.zero(n))
    d -= 2 * sum((prod([x[v] for v in t], n) for t in triangles), Polynomial.zero(n))
    return H, {1: [one], 2: [one], 3: i3, 4: i4, 5: i5, 6: [d]}


def test_criterion_01_k6_minus_matching_ideals():
    start = time.perf_counter()
    H, ref = h_reference_ideals()
    n = H.n
    order = MonomialOrder.grlex(n)
    failures = []
    for i in range(1, n + 1):
        if not ideal_equal(critical_ideal(H, i), Ideal(n, ref[i]), order):
            failures.append(f"I{i}")
    chain = ideal_chain(H)
    if [lv.trivial for lv in chain.levels] != [True, True, False, False, False, False]:
        failures.append("triviality pattern")
    if time.perf_counter() - start > 120:
        failures.append("runtime over 2 min")
    record(1, "K6 minus M3: I1..I6 equal the displayed generator sets", failures, start)


# ---------------------------------------------------------------- 2

def factors_from_divisors(divisors):
    out, prev = [], 1
    for dv in divisors:
        out.append(dv // prev if prev else 0)
        prev = dv
    return out


def test_criterion_02_evaluation_and_groups():
    start = time.perf_counter()
    failures = []
    H = complete_minus_matching(6)
    d = [5, 4, 5, 5, 4, 5]
    divisors = []
    for i in range(1, 7):
        g = 0
        for p in critical_ideal(H, i).generators:
            g = gcd(g, p.evaluate(d))
        divisors.append(g)
    if factors_from_divisors(divisors) != [1, 1, 1, 1, 20, 140]:
        failures.append(f"chain at d gives {factors_from_divisors(divisors)}")
    G1 = NAMED_GRAPHS["fig1-g1"]()
    snf = smith_normal_form(laplacian_matrix(G1)).diagonal
    if list(snf[:6]) != [1, 1, 1, 1, 20, 140] or snf[6] != 0:
        failures.append(f"SNF L(G1) = {snf}")
    if critical_group(G1).invariant_factors != (20, 140):
        failures.append("K(G1)")
    snf2 = smith_normal_form(laplacian_matrix(NAMED_GRAPHS["fig1-g2"]())).diagonal
    if snf2[4] != 185:
        failures.append(f"f5(G2) = {snf2[4]}")
    record(2, "evaluation at (5,4,5,5,4,5) and SNF give Z_20 + Z_140; f5(G2) = 185", failures, start)


# ---------------------------------------------------------------- 3

def test_criterion_03_determinant_formula():
    start = time.perf_counter()
    failures = []
    exa1 = NAMED_GRAPHS["exa1"]()
    target = P("x1*x2*x3*x4 - x1 - 1", 4)
    if det_via_vertex_subsets(exa1) != target or det(generalized_laplacian(exa1)) != target:
        failures.append("exa1")
    rng = random.Random(3)
    for k in range(120):
        D = random_digraph(rng, rng.randint(1, 6), p=rng.choice([0.3, 0.5]), max_mult=rng.choice([1, 3]))
        if det_via_vertex_subsets(D) != det(generalized_laplacian(D)):
            failures.append(f"random digraph #{k}")
    record(3, "vertex-subset determinant equals symbolic det on 120 random digraphs and exa1", failures, start)


# ---------------------------------------------------------------- 4

def test_criterion_04_complete_graphs():
    start = time.perf_counter()
    failures = []
    for n in range(3, 7):
        for m in range(1, n):
            flags = kn_verify(n, m)
            for name, good in flags.items():
                if not good:
                    failures.append(f"K{n} m={m} {name}")
    for n in range(1, 8):
        if kn_det(n) != det(generalized_laplacian(complete(n))):
            failures.append(f"det K{n}")
    record(4, "K_n bases generate, are Groebner and reduced; closed-form det", failures, start)


# ---------------------------------------------------------------- 5

C4_PRINTED = {(1, 3): "x_2 +x_4", (2, 4): "x_1+x_3", (1, 2): "x_3 x_4"}
C5_PRINTED = {
    (1, 4): "x_2 x_3-1+x_5",
    (2, 5): "x_3 x_4-1+x_1",
    (3, 1): "x_4 x_5-1+x_2",
    (4, 2): "x_5 x_1-1+x_3",
    (5, 3): "x_1 x_2-1+x_4",
}
C6_PRINTED = {
    (6, 3): "x_1x_2+x_4x_5-2",
    (1, 4): "x_2x_3+x_5x_6-2",
    (2, 5): "x_3x_4+x_1x_6-2",
    (3, 1): "x_4x_5x_6-x_4-x_6+x_2",
    (4, 2): "x_1x_5x_6-x_1-x_5+x_3",
}


def test_criterion_05_cycles():
    start = time.perf_counter()
    failures = []
    for n in range(4, 9):
        G = cycle(n)
        order = MonomialOrder.grlex(n)
        for i in range(1, n - 1):
            if not groebner(critical_ideal(G, i).generators).is_trivial():
                failures.append(f"C{n} I{i} not trivial")
        target = Ideal(n, cycle_ideal_generators(n))
        for k in range(1, n + 1):
            if not ideal_equal(Ideal(n, cycle_min_generators(n, k)), target, order):
                failures.append(f"C{n} F{k}")
        rep = cycle_identity_check(n)
        if not rep.ok:
            failures.append(f"C{n} identities {sorted(k for k, v in rep.failures.items() if v)}")
        for name, good in verify_cycle_basis(cycle_groebner(n)).items():
            if not good:
                failures.append(f"C{n} basis {name}")
    for n, printed in ((4, C4_PRINTED), (5, C5_PRINTED), (6, C6_PRINTED)):
        for (i, j), text in printed.items():
            if canonical_string(cycle_q(i, j, n)) != canonical_string(from_tex(text, n)):
                failures.append(f"C{n} q{i},{j}")
    record(5, "cycles n=4..8: trivial levels, F_k, identities, B_1/B_0, printed lists", failures, start)


# ---------------------------------------------------------------- 6

def simple_corpus():
    graphs = {}
    for n in range(1, 8):
        graphs[f"K{n}"] = complete(n)
        graphs[f"P{n}"] = path(n)
        graphs[f"T{n}"] = trivial(n)
    for n in range(3, 8):
        graphs[f"C{n}"] = cycle(n)
    for name in ("k6-minus-m3", "fige-h", "fige-cone", "fig1-g1", "fig1-g2", "cospectral-g1", "cospectral-g2"):
        graphs[name] = NAMED_GRAPHS[name]()
    graphs["cone(P5)"] = cone(path(5))
    rng = random.Random(6)
    for k in range(20):
        graphs[f"random#{k}"] = random_graph(rng, rng.randint(2, 6), rng.choice([0.3, 0.5, 0.7]))
    return graphs


def test_criterion_06_gamma_values_and_bounds():
    start = time.perf_counter()
    failures = []
    for n in range(1, 8):
        if n >= 2 and gamma(complete(n)) != 1:
            failures.append(f"gamma K{n}")
        if gamma(path(n)) != n - 1:
            failures.append(f"gamma P{n}")
        if gamma(trivial(n)) != 0:
            failures.append(f"gamma T{n}")
    if gamma(NAMED_GRAPHS["fige-cone"]()) != 5:
        failures.append("gamma cone(H)")
    for name, G in simple_corpus().items():
        rep = gamma_bounds_check(G)
        if not rep.ok:
            failures.append(f"bounds {name}")
    record(6, "gamma of K_n, P_n, T_n and cone(H); clique, stability and deletion bounds", failures, start)


# ---------------------------------------------------------------- 7

H_T_Z = ["1", "1", "2, t", "t^2, 4t", "t^3(t+2), 4t^2(t+2)", "t^3(t+2)^2(t-4)"]
H_T_Q = ["1", "1", "1", "1", "t^2(t+2)", "t^3(t+2)^2(t-4)"]
CHAR = "(t-1)(t+1)^2(t^3-t^2-5t+1)"
G1_T_Z = ["1", "1", "1", "1", "2(t+1), (t+1)(t^2+1)", CHAR]
G2_T_Z = ["1", "1", "1", "2, (t+1)", "4(t+1), (t+1)(t-3)", CHAR]


def _t_ideal_matches(G, i, cell, mode):
    gens = [T(g) for g in cell.split(", ")]
    return ideal_equal(t_ideal(G, i, mode), Ideal(1, gens, mode))


def test_criterion_07_t_ideals():
    start = time.perf_counter()
    failures = []
    H = complete_minus_matching(6)
    G1, G2 = NAMED_GRAPHS["cospectral-g1"](), NAMED_GRAPHS["cospectral-g2"]()
    tables = [
        ("H", H, INTEGERS, H_T_Z),
        ("H", H, RATIONALS, H_T_Q),
        ("G1", G1, INTEGERS, G1_T_Z),
        ("G2", G2, INTEGERS, G2_T_Z),
    ]
    for name, G, mode, table in tables:
        for i, cell in enumerate(table, 1):
            if not _t_ideal_matches(G, i, cell, mode):
                computed = ", ".join(canonical_string(g, var="t") for g in t_ideal(G, i, mode).generators)
                failures.append(f"{name} I{i} over {'Q' if mode == RATIONALS else 'Z'}: expected <{cell}>, computed <{computed}>")
    if not _t_ideal_matches(G2, 4, "2, t+1", INTEGERS) or not _t_ideal_matches(G1, 4, "1", INTEGERS):
        failures.append("I4 does not separate G1 and G2")
    record(7, "t-ideal tables for K6 minus M3 and the cospectral pair", failures, start)


# ---------------------------------------------------------------- 8

def test_criterion_08_star_deleted():
    start = time.perf_counter()
    failures = []
    for n in range(3, 9):
        for m in range(1, n):
            if star_deleted_group(n, m) != star_deleted_oracle(n, m):
                failures.append(f"n={n} m={m}")
    record(8, "closed form for K_{n+1} minus S_m equals the SNF group, 3<=n<=8", failures, start)


# ---------------------------------------------------------------- 9

def structure_corpus():
    rng = random.Random(9)
    graphs = []
    for k in range(30):
        graphs.append((f"graph#{k}", random_graph(rng, rng.randint(1, 5), rng.choice([0.3, 0.6])), None))
    for k in range(30):
        n = rng.randint(1, 5)
        graphs.append((f"digraph#{k}", random_digraph(rng, n, p=0.35 if n == 5 else 0.45, max_mult=2), None))
    for n in range(2, 6):
        graphs += [(f"K{n}", complete(n), None), (f"P{n}", path(n), None), (f"T{n}", trivial(n), None)]
    for n in range(3, 6):
        graphs.append((f"C{n}", cycle(n), None))
    for name in ("k6-minus-m3", "fige-h", "exa1", "cospectral-g1", "cospectral-g2", "fig1-g2"):
        graphs.append((name, NAMED_GRAPHS[name](), None))
    pairs = [(trivial(1), trivial(1)), (path(2), cycle(3)), (complete(2), complete(2)), (path(3), trivial(2))]
    for A, B in pairs:
        graphs.append((f"union {A.n}+{B.n}", disjoint_union(A, B), (A, B)))
    return graphs


def test_criterion_09_structure():
    start = time.perf_counter()
    failures = []
    corpus = structure_corpus()
    for name, G, parts in corpus:
        rep = verify_structure(G, union_of=parts)
        if not rep.ok:
            failures.append(f"{name}: {rep.failures}")
    for n in range(1, 6):
        for i in range(1, n + 1):
            gens = set(critical_ideal(trivial(n), i).generators)
            mono = {prod([Polynomial.var(n, j) for j in J], n) for J in itertools.combinations(range(1, n + 1), i)}
            if gens != mono:
                failures.append(f"T{n} I{i}")
    record(9, f"structure certificates on {len(corpus)} graphs and digraphs, gamma_Z <= gamma_Q", failures, start)


# ---------------------------------------------------------------- 10

def _random_poly(rng, nvars, terms, deg, coeff):
    t = {}
    for _ in range(terms):
        mono = tuple(rng.randint(0, deg) for _ in range(nvars))
        t[mono] = rng.randint(-coeff, coeff)
    return Polynomial(nvars, {m: c for m, c in t.items() if c})


def test_criterion_10_engine():
    start = time.perf_counter()
    failures = []
    x, y = Polynomial.var(2, 1), Polynomial.var(2, 2)
    gb = groebner([2 * x, 3 * y])
    if x * y not in gb.basis:
        failures.append("<2x, 3y> basis lacks xy")
    rng = random.Random(10)
    checked = 0
    for k in range(40):
        nvars = rng.randint(1, 3)
        gens = [g for g in (_random_poly(rng, nvars, 3, 2, 5) for _ in range(rng.randint(1, 3))) if not g.is_zero()]
        if not gens:
            continue
        mode = rng.choice([INTEGERS, RATIONALS])
        order = MonomialOrder.grlex(nvars)
        out = buchberger(Ideal(nvars, gens, mode), order)
        if not is_groebner(out.basis, order, mode):
            failures.append(f"random ideal #{k} ({mode})")
        checked += 1
    for name, G in (("k6-minus-m3", complete_minus_matching(6)), ("C6", cycle(6)), ("fige-h", NAMED_GRAPHS["fige-h"]())):
        order = MonomialOrder.grlex(G.n)
        for i in range(1, G.n + 1):
            out = buchberger(critical_ideal(G, i), order)
            if not is_groebner(out.basis, order):
                failures.append(f"{name} I{i}")
    for k in range(1000):
        nvars = rng.randint(1, 4)
        order = MonomialOrder.grlex(nvars)
        B = [b for b in (_random_poly(rng, nvars, rng.randint(1, 3), 2, 6) for _ in range(rng.randint(1, 4))) if not b.is_zero()]
        if not B:
            B = [Polynomial.constant(nvars, rng.randint(2, 5))]
        f = _random_poly(rng, nvars, rng.randint(1, 6), 3, 20)
        mode = INTEGERS if k % 4 else RATIONALS
        rec = reduce_with_witness(f, B, order, mode)
        rebuilt = sum((q * b for q, b in zip(rec.quotients, B)), Polynomial.zero(nvars)) + rec.remainder
        if rec.multiplier == 0 or rec.multiplier * f != rebuilt or (mode == INTEGERS and rec.multiplier != 1):
            failures.append(f"witness #{k}")
    record(10, f"engine: {checked} random bases and named ideals are Groebner, <2x,3y> has xy, 1000 witnesses", failures, start)


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
