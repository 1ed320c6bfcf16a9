from fractions import Fraction

import pytest
from flint import acb, arb, ctx, fmpq
from hypothesis import assume, given, strategies as st

from triangle_forms.errors import BadValuation, DivisionByZeroSeries, InsufficientOrder
from triangle_forms.fields import RATIONAL, BallField
from triangle_forms.series import (
    TruncatedSeries,
    series_add,
    series_compose,
    series_exp,
    series_inverse,
    series_log,
    series_mul,
    series_pow,
    series_revert,
    theta_derivative,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)


@st.composite
def series(draw, min_val=-2, max_val=3, min_len=1, max_len=10, unit=False):
    v = draw(st.integers(min_val, max_val))
    cs = draw(st.lists(rationals, min_size=min_len, max_size=max_len))
    if unit or not cs or cs[0] == 0:
        cs = [draw(rationals.filter(lambda x: x != 0))] + cs[1:]
    return TruncatedSeries.from_coefficients(cs, v)


def S(cs, v=0, order=None):
    return TruncatedSeries.from_coefficients(cs, v, order)


def same_through(a, b, order):
    return all(a[k] == b[k] for k in range(min(a.valuation, b.valuation), order))


def _encloses(ball, q) -> bool:
    # a far tighter ball around the exact rational must sit inside
    with ctx.workprec(2000):
        return ball.contains(acb(arb(q)))


# -- examples -------------------------------------------------------------

def test_examples_mul_pow():
    a = S([1, 1], -1, 5)                  # w^-1 + 1
    assert series_mul(a, S([1], 1, 10)).coefficient_list(0, 5) == [1, 1, 0, 0, 0]
    inv = series_pow(S([1, 1], 0, 8), -1)
    assert inv.coefficient_list(0, 8) == [1, -1, 1, -1, 1, -1, 1, -1]
    j = S([1, Fraction(744, 1728), Fraction(196884, 1728**2)], -1)
    sq = series_pow(j, 2)
    assert sq.valuation == -2
    assert sq[-2] == 1 and sq[-1] == fmpq(1488, 1728)


def test_examples_theta():
    assert theta_derivative(S([1], -1, 4))[-1] == -1
    assert theta_derivative(S([7], 0, 4)).is_zero()
    t = theta_derivative(S([1, Fraction(-1, 72)], 3))
    assert (t[3], t[4]) == (3, fmpq(-4, 72))


def test_examples_exp_log_revert():
    assert series_exp(TruncatedSeries.zero(6)).coefficient_list(0, 6) == [1, 0, 0, 0, 0, 0]
    e = series_exp(S([1], 1, 6))
    assert e.coefficient_list(0, 6) == [fmpq(1), 1, fmpq(1, 2), fmpq(1, 6), fmpq(1, 24), fmpq(1, 120)]
    a = S([3, -1], 1, 12)
    assert same_through(series_log(series_exp(a)), a, 12)
    assert series_revert(S([1], 1, 9)).coefficient_list(1, 9) == [1] + [0] * 7
    catalan = [1, 1, 2, 5, 14, 42, 132, 429]
    b = series_revert(S([1, 1], 1, 9))
    assert b.coefficient_list(1, 9) == [(-1) ** i * c for i, c in enumerate(catalan)]


def test_errors():
    with pytest.raises(DivisionByZeroSeries):
        series_inverse(TruncatedSeries.zero(5))
    with pytest.raises(BadValuation):
        series_exp(S([1, 2], 0))
    with pytest.raises(BadValuation):
        series_log(S([2, 1], 0))
    with pytest.raises(BadValuation):
        series_revert(S([1, 1], 2))
    with pytest.raises(InsufficientOrder):
        S([1, 2], 0)[5]


def test_order_rule():
    a, b = S([1, 2, 3], 1, 6), S([1, 1], -2, 2)
    # order(ab) = min(v(a) + N(b), v(b) + N(a))
    assert series_mul(a, b).order == min(1 + 2, -2 + 6)
    assert series_add(a, b).order == 2


def test_json_round_trip():
    a = S([Fraction(31, 72), -3, Fraction(1, 7)], -1)
    doc = a.to_json()
    assert doc["coefficients"][0] == "31/72"
    assert doc["variable"] == "qtilde3" and doc["field"] == "rational"
    assert TruncatedSeries.from_json(doc) == a
    ball = a.to_field(BallField(200))
    back = TruncatedSeries.from_json(ball.to_json())
    assert back.field == BallField(200)
    assert all(_encloses(back[k], a[k]) for k in range(-1, 2))


# -- properties ----------------------------------------------------------

@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert series_mul(series_mul(a, b), c) == series_mul(a, series_mul(b, c))
    assert series_mul(a, b) == series_mul(b, a)
    lhs = series_mul(a, series_add(b, c))
    rhs = series_add(series_mul(a, b), series_mul(a, c))
    n = min(lhs.order, rhs.order)
    assert same_through(lhs, rhs, n)
    assert series_add(a, -a).is_zero()


@given(series(), series())
def test_theta_is_derivation(a, b):
    lhs = theta_derivative(series_mul(a, b))
    rhs = series_add(series_mul(theta_derivative(a), b), series_mul(a, theta_derivative(b)))
    assert same_through(lhs, rhs, min(lhs.order, rhs.order))


@given(series(min_val=0, max_val=0, min_len=2, unit=True))
def test_inverse(a):
    one = series_mul(a, series_inverse(a))
    assert one[0] == 1 and all(one[k] == 0 for k in range(1, one.order))


@given(series(min_val=1, max_val=2, min_len=3, max_len=9))
def test_exp_log_round_trip(a):
    assert same_through(series_log(series_exp(a)), a, a.order)
    unit = series_exp(a)
    assert same_through(series_exp(series_log(unit)), unit, unit.order)


@given(series(min_val=1, max_val=1, min_len=2, max_len=10, unit=True))
def test_revert_round_trip(a):
    b = series_revert(a)
    w = series_compose(a, b)
    assert w[1] == 1 and all(w[k] == 0 for k in range(2, w.order))
    assert same_through(series_revert(b), a, a.order)


@given(series(min_val=-1, max_val=1, min_len=2, max_len=6, unit=True), st.integers(-4, 6))
def test_pow_methods_agree(a, m):
    assume(m >= 0 or not a.is_zero())
    assert series_pow(a, m, "binary") == series_pow(a, m, "iterated")


@given(series(min_len=2, max_len=7), series(min_len=2, max_len=7))
def test_ball_backend_encloses_exact(a, b):
    field = BallField(120)
    ab, bb = a.to_field(field), b.to_field(field)
    exact = series_mul(a, b)
    balls = series_mul(ab, bb)
    assert all(_encloses(balls[k], exact[k]) for k in range(exact.valuation, exact.order))
    inv, binv = series_inverse(b), series_inverse(bb)
    assert all(_encloses(binv[k], inv[k]) for k in range(inv.valuation, inv.order))
