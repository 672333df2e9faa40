import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from critideal.polyring import (
    MonomialOrder,
    Polynomial,
    RingMismatch,
    canonical_string,
    mono_mul,
    parse_polynomial,
)
from critideal.digraph import complete_minus_matching
from critideal.symlaplace import det, generalized_laplacian

from conftest import NVARS, monomials, polynomials


def x(i, n=6):
    return Polynomial.var(n, i)


def test_difference_of_squares():
    assert (x(1) + 1) * (x(1) - 1) == x(1) ** 2 - 1


def test_identities():
    p = x(2) * x(3) - 1 + x(5)
    assert p + 0 == p
    assert p * 1 == p
    assert p - p == 0


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        Polynomial.var(2, 1) + Polynomial.var(3, 1)


def test_compare_degree_first():
    o = MonomialOrder.grlex(3)
    assert o.compare((1, 1, 0), (0, 0, 1)) == 1


def test_compare_lex_tiebreak():
    o = MonomialOrder.grlex(3)
    # x1*x3 against x2^2
    assert o.compare((1, 0, 1), (0, 2, 0)) == 1


def test_compare_permuted_priority():
    o = MonomialOrder.from_variables([2, 3, 4, 5, 6, 1])
    assert o.compare((0, 1, 1, 0, 0, 0), (0, 0, 0, 0, 1, 1)) == 1
    # x1 is now the smallest variable
    assert o.compare((1, 0, 0, 0, 0, 0), (0, 0, 0, 0, 0, 1)) == -1


def test_order_rejects_non_permutation():
    with pytest.raises(ValueError):
        MonomialOrder.from_variables([1, 1, 2])


def test_leading_terms():
    o = MonomialOrder.grlex(6)
    lt = (x(2) * x(3) - 1 + x(5)).leading(o)
    assert (lt.coefficient, lt.monomial) == (1, (0, 1, 1, 0, 0, 0))
    assert Polynomial.constant(6, 7).leading(o).coefficient == 7
    q13 = x(4) * x(5) * x(6) + x(2) - x(4) - x(6)
    assert q13.lm(o) == (0, 0, 0, 1, 1, 1)


def test_leading_of_zero_raises():
    with pytest.raises(ValueError):
        Polynomial.zero(2).leading(MonomialOrder.grlex(2))


def test_substitute_t_gives_char_poly():
    G = complete_minus_matching(6)
    t = Polynomial.var(1, 1)
    d = det(generalized_laplacian(G)).substitute({i: t for i in range(1, 7)}, nvars=1)
    assert d == t**3 * (t + 2) ** 2 * (t - 4)


def test_substitute_partial_and_empty():
    p = (x(1, 2) + 1) * (x(2, 2) + 1)
    assert p.substitute({}) == p
    assert p.substitute({1: -1}) == 0


def test_substitute_unknown_variable():
    with pytest.raises(RingMismatch):
        x(1, 2).substitute({3: 0})


def test_evaluate():
    p = parse_polynomial("x1*x2*x3*x4 - x1 - 1", 4)
    assert p.evaluate([1, 1, 1, 1]) == -1
    with pytest.raises(ValueError):
        p.evaluate([1, 1])


def test_canonical_string():
    p = parse_polynomial("x1 x2 x3 x4 - x1 - 1", 4)
    assert canonical_string(p) == "x1*x2*x3*x4 - x1 - 1"
    assert canonical_string(Polynomial.zero(3)) == "0"
    assert canonical_string(-x(2) + x(2) * x(3)) == "x2*x3 - x2"
    assert canonical_string(parse_polynomial("-3*x1^2*x2 + 4", 2)) == "-3*x1^2*x2 + 4"
    assert canonical_string(parse_polynomial("t^2 + 4 t", 1, var="t"), var="t") == "t^2 + 4*t"


def test_parser_forms():
    a = parse_polynomial("(x1+1)^2 - 2*x2**3", 2)
    b = x(1, 2) ** 2 + 2 * x(1, 2) + 1 - 2 * x(2, 2) ** 3
    assert a == b
    assert parse_polynomial("x5 x1-1+x3", 5) == parse_polynomial("x1*x5 + x3 - 1", 5)


@pytest.mark.parametrize("bad", ["x1 +", "x9", "(x1", "x1 $ 2"])
def test_parser_errors(bad):
    with pytest.raises(ValueError):
        parse_polynomial(bad, 2)


def test_exact_division():
    o = MonomialOrder.grlex(2)
    a = (x(1, 2) + x(2, 2)) * (x(1, 2) - 3)
    assert a.exact_div(x(1, 2) - 3, o) == x(1, 2) + x(2, 2)
    with pytest.raises(ArithmeticError):
        a.exact_div(x(1, 2) + 5, o)


# ---------------------------------------------------------------- properties

@given(polynomials(), polynomials(), polynomials())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@given(monomials, monomials, monomials)
def test_order_axioms(a, b, c):
    o = MonomialOrder.grlex(NVARS)
    r = o.compare(a, b)
    assert r in (-1, 0, 1)
    assert (r == 0) == (a == b)
    assert o.compare(b, a) == -r
    if r < 0:
        assert o.compare(mono_mul(a, c), mono_mul(b, c)) < 0
    assert o.compare((0,) * NVARS, a) <= 0


@given(polynomials(), polynomials(), st.lists(st.integers(-4, 4), min_size=NVARS, max_size=NVARS))
def test_evaluation_is_a_homomorphism(a, b, v):
    assert (a * b).evaluate(v) == a.evaluate(v) * b.evaluate(v)
    assert (a + b).evaluate(v) == a.evaluate(v) + b.evaluate(v)


@given(polynomials(), polynomials(), polynomials(max_terms=3), polynomials(max_terms=3))
@settings(max_examples=60)
def test_substitution_commutes_with_arithmetic(a, b, s1, s2):
    sub = {1: s1, 3: s2}
    assert (a * b).substitute(sub) == a.substitute(sub) * b.substitute(sub)
    assert (a - b).substitute(sub) == a.substitute(sub) - b.substitute(sub)


@given(polynomials(), polynomials())
def test_canonical_string_is_injective(a, b):
    assert (canonical_string(a) == canonical_string(b)) == (a == b)


@given(polynomials())
def test_canonical_string_round_trips(a):
    assert parse_polynomial(canonical_string(a), NVARS) == a
