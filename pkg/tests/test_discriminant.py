import math
from fractions import Fraction

import pytest
from flint import fmpq

from triangle_forms.discriminant import delta_expansion, delta_exponents, delta_nonvanishing_check
from triangle_forms.errors import InsufficientOrder
from triangle_forms.groups import INF, iter_signatures, make_signature

from oracles import delta_23


def test_matches_eta_product_through_20():
    d = delta_expansion(make_signature(2, 3), 21)
    assert d.weight == 12 and d.n_delta == 1
    oracle = delta_23(20)
    for k in range(1, 21):
        o = oracle[k - 1]
        assert d.series[k] == fmpq(o.numerator, o.denominator), k
    assert d.series[2] == fmpq(-1, 72)


def test_exponents_23():
    assert delta_exponents(make_signature(2, 3)) == (6, -4, -3)


def _n_delta(p, q):
    L = math.lcm(*(o for o in (p, q) if o is not INF)) if (p, q) != (INF, INF) else 1
    return int(L * (1 - (Fraction(0) if p is INF else Fraction(1, p)) - (Fraction(0) if q is INF else Fraction(1, q))))


@pytest.mark.parametrize("sig", [s for s in iter_signatures(12)], ids=str)
def test_valuation_and_leading_coefficient(sig):
    d = delta_expansion(sig, _n_delta(sig.p, sig.q) + 3)
    assert d.series.valuation == d.n_delta == _n_delta(sig.p, sig.q)
    assert d.series.leading() == 1


def test_valuation_25():
    assert delta_expansion(make_signature(2, 5), 6).series.valuation == 3


@pytest.mark.parametrize("pq", [(2, 3), (2, 5), (3, 4), (3, INF), (INF, INF)])
def test_binary_and_iterated_powers_agree(pq):
    sig = make_signature(*pq)
    nd = _n_delta(*pq)
    a = delta_expansion(sig, nd + 12, "binary").series
    b = delta_expansion(sig, nd + 12, "iterated").series
    assert a == b


def test_insufficient_order():
    with pytest.raises(InsufficientOrder):
        delta_expansion(make_signature(2, 5), 3)


def test_nonvanishing_spot_checks():
    d23 = delta_expansion(make_signature(2, 3), 40)
    r_i, r_10i = delta_nonvanishing_check(d23, ["i", "10i"], digits=40)
    assert r_i.nonzero and r_i.abs_lower > 1e-5
    # leading-term dominance far up the cusp: |Delta| is close to |qtilde|
    assert r_10i.nonzero
    assert r_10i.abs_lower == pytest.approx(1728 * math.exp(-20 * math.pi), rel=1e-3)
    (r,) = delta_nonvanishing_check(delta_expansion(make_signature(2, 5), 40), ["2i"], digits=40)
    assert r.nonzero and r.abs_lower > 0
