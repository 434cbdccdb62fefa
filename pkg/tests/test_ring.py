from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from irrmaps.ring import (ContextError, GradedSeries, MultiPoly, Series,
                          TruncationError, bernoulli_plus, faulhaber_closed_sum,
                          power_sum_poly)

G = ("b", "j")


def var(name, gens=G):
    return MultiPoly.variable(gens, name)


def test_poly_basics():
    b, j = var("b"), var("j")
    assert (b + j) * (b - j) == b * b - j * j
    p = (b + j) ** 3
    assert p * 0 == MultiPoly(G)
    cube = (var("b") ** 2 - var("j") ** 2) ** 3
    # binomial expansion of (x - y)^3 in the squared generators
    assert len(cube.terms) == 4
    assert sorted(cube.terms.values()) == [Fraction(-3), Fraction(-1), Fraction(1), Fraction(3)]


def test_poly_context_mismatch():
    p = var("b")
    q = MultiPoly.variable(("b", "l1"), "b")
    with pytest.raises(ContextError):
        _ = p + q
    with pytest.raises(ContextError):
        MultiPoly.variable(G, "nope")


def test_poly_evaluate():
    gens = ("b", "l1", "l2", "l3", "l4")
    ls = [MultiPoly.variable(gens, f"l{i}") for i in range(1, 5)]
    b = MultiPoly.variable(gens, "b")
    poly = sum((l * l for l in ls), MultiPoly(gens)) - (b * b * 3 + b * 3 + 1)
    value = poly.evaluate({"b": 1, "l1": 2, "l2": 2, "l3": 2, "l4": 2})
    assert value.as_fraction() == 9
    # empty assignment is the identity
    assert poly.evaluate({}) == poly
    # Q_0 = b + j vanishes at j = -b
    q0 = var("b") + var("j")
    assert q0.substitute("j", -var("b")).is_zero()


def test_poly_pow_and_degree():
    b = var("b")
    assert (b ** 0) == MultiPoly.constant(G, 1)
    assert (b ** 5).degree_in("b") == 5
    assert MultiPoly(G).degree_in("b") == -1
    assert ((b + 1) ** 2).total_degree() == 2


@st.composite
def polys(draw):
    terms = {}
    for _ in range(draw(st.integers(0, 4))):
        e = (draw(st.integers(0, 3)), draw(st.integers(0, 3)))
        terms[e] = Fraction(draw(st.integers(-9, 9)), draw(st.integers(1, 9)))
    return MultiPoly(G, terms)


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_laws(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


def scalar_series(coeffs, order):
    return Series([Fraction(c) for c in coeffs], order, Fraction(0))


def test_series_multiply_inverse():
    one_plus = scalar_series([1, 1], 6)
    geo = scalar_series([1, -1, 1, -1, 1, -1, 1], 6)
    assert (one_plus * geo) == scalar_series([1], 6)
    assert one_plus.inverse() == geo


def test_series_reverse_catalan():
    f = scalar_series([0, 1, -1], 6)  # z - z^2
    g = f.reverse()
    # Catalan numbers
    assert [g[k] for k in range(7)] == [0, 1, 1, 2, 5, 14, 42]
    assert scalar_series([0, 1], 4).reverse() == scalar_series([0, 1], 4)
    z = f.compose(g)
    assert z == scalar_series([0, 1], 6)


def test_series_reverse_two_sided():
    f = scalar_series([0, 1, 3, -2, 7, 1, -5], 6)
    g = f.reverse()
    assert f.compose(g) == scalar_series([0, 1], 6)
    assert g.compose(f) == scalar_series([0, 1], 6)


def test_series_reverse_rejects_zero_linear():
    with pytest.raises(ValueError):
        scalar_series([0, 0, 1], 4).reverse()
    with pytest.raises(ValueError):
        scalar_series([1, 1], 4).reverse()


def test_series_log_exp():
    log1p = scalar_series([1, 1], 5).log()
    assert [log1p[k] for k in range(6)] == [
        0, 1, Fraction(-1, 2), Fraction(1, 3), Fraction(-1, 4), Fraction(1, 5)]
    assert scalar_series([1], 4).log() == scalar_series([0], 4)
    f = scalar_series([0, 2, -1, 3], 5)
    assert (scalar_series([1], 5) + f).log().exp() == scalar_series([1], 5) + f
    with pytest.raises(ValueError):
        scalar_series([2, 1], 3).log()


def test_series_antiderivative():
    assert scalar_series([1], 0).antiderivative() == scalar_series([0, 1], 1)
    assert scalar_series([1, 2], 1).antiderivative() == scalar_series([0, 1, 1], 2)


def test_series_truncation_commutes():
    f = scalar_series([1, 2, 3, 4, 5], 4)
    g = scalar_series([0, 1, -1, 2, -2], 4)
    assert (f * g).truncate(2) == f.truncate(2) * g.truncate(2)
    with pytest.raises(TruncationError):
        f.truncate(9)


def test_graded_nilpotent_markers():
    gens = ("b",)
    cap = 2
    t = GradedSeries.t_var(gens, cap)
    e1 = GradedSeries.marker(gens, cap, 1)
    e2 = GradedSeries.marker(gens, cap, 2)
    prod = (t + e1) * (t + e2)
    assert prod.coefficient(2, ()) == MultiPoly.constant(gens, 1)
    assert prod.coefficient(1, (1,)) == MultiPoly.constant(gens, 1)
    assert prod.coefficient(1, (2,)) == MultiPoly.constant(gens, 1)
    assert prod.coefficient(0, (1, 2)) == MultiPoly.constant(gens, 1)
    assert (e1 * e1).is_zero()


def test_graded_cap_mismatch():
    gens = ("b",)
    with pytest.raises(TruncationError):
        _ = GradedSeries.t_var(gens, 2) + GradedSeries.t_var(gens, 3)


def test_graded_truncation_commutes():
    gens = ("b",)
    a = GradedSeries.t_var(gens, 4) + GradedSeries.marker(gens, 4, 1) + 1
    b = GradedSeries.t_var(gens, 4) * 2 + GradedSeries.marker(gens, 4, 2)
    hi = (a * b).truncate(2)
    lo = a.truncate(2) * b.truncate(2)
    assert hi == lo


def test_graded_t_derivative():
    gens = ("b",)
    t = GradedSeries.t_var(gens, 3)
    e1 = GradedSeries.marker(gens, 3, 1)
    f = t * t * t + t * e1 * 5
    df = f.t_derivative()
    assert df.coefficient(2, ()) == MultiPoly.constant(gens, 3)
    assert df.coefficient(0, (1,)) == MultiPoly.constant(gens, 5)


def test_bernoulli_convention():
    assert bernoulli_plus(1) == Fraction(1, 2)
    assert bernoulli_plus(2) == Fraction(1, 6)
    assert bernoulli_plus(3) == 0
    assert bernoulli_plus(12) == Fraction(-691, 2730)


def test_faulhaber_examples():
    gens = ("b", "l")
    s1 = faulhaber_closed_sum(1, gens, "b", "l")
    b, l = MultiPoly.variable(gens, "b"), MultiPoly.variable(gens, "l")
    assert s1 == (l * l + l - b * b - b) * Fraction(1, 2)
    # classical closed form for the cube sum
    s3 = power_sum_poly(3, ("x",), "x")
    x = MultiPoly.variable(("x",), "x")
    assert s3 == x * x * (x + 1) * (x + 1) * Fraction(1, 4)
    # sum_{k=b+1}^{l} 2k at (b, l) = (1, 3) is 4 + 6
    twice = faulhaber_closed_sum(1, gens, "b", "l") * 2
    assert twice.evaluate({"b": 1, "l": 3}).as_fraction() == 10
    with pytest.raises(ValueError):
        faulhaber_closed_sum(0, gens, "b", "l")


def test_faulhaber_matches_direct_sums():
    gens = ("b", "l")
    for m in range(1, 10):
        closed = faulhaber_closed_sum(m, gens, "b", "l")
        for lo in range(0, 21, 4):
            for hi in range(lo, 21, 5):
                direct = sum(k ** m for k in range(lo + 1, hi + 1))
                assert closed.evaluate({"b": lo, "l": hi}).as_fraction() == direct


def test_compose_requires_zero_constant():
    f = scalar_series([1, 1], 3)
    g = scalar_series([1, 1], 3)
    with pytest.raises(ValueError):
        f.compose(g)


def test_evaluate_unknown_generator():
    p = var("b")
    with pytest.raises(ContextError):
        p.evaluate({"zz": 1})


@settings(max_examples=25, deadline=None)
@given(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4),
       st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4))
def test_graded_ring_laws(a0, a1, a2, b0, b1, b2):
    gens = ("b",)
    t = GradedSeries.t_var(gens, 3)
    e1 = GradedSeries.marker(gens, 3, 1)
    bvar = MultiPoly.variable(gens, "b")
    p = t * a0 + e1 * a1 + t * t * (bvar * a2)
    q = t * b0 + e1 * (bvar * b1) + b2
    r = t * e1 * a1 + b0
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
