import math

import pytest
from flint import acb, arb, ctx, fmpq, fmpz_poly
from hypothesis import given, settings, strategies as st

from triangle_forms.classify import (
    CM_CANDIDATE,
    TRANSCENDENTAL_CANDIDATE,
    UNDETERMINED,
    ClassifierBounds,
    classify_point,
    combine_verdict,
    recognize_algebraic,
)
from triangle_forms.errors import InsufficientPrecision
from triangle_forms.groups import make_signature
from triangle_forms.numeric import locate_zero, make_context

from oracles import J_OF_2I, J_OF_I, J_OF_RHO


def _at(digits, f):
    with ctx.workprec(int(digits * 3.33) + 20):
        return f()


def test_recognize_examples():
    r = recognize_algebraic(_at(120, lambda: acb(0, 1)))
    assert r.recognized and r.polynomial == fmpz_poly([1, 0, 1])
    golden = _at(50, lambda: acb((1 + arb(5).sqrt()) / 2))
    r = recognize_algebraic(golden, 4, 1000, digits=50)
    assert r.recognized and r.coefficients == [-1, -1, 1]
    assert r.residual < 10 ** (-0.8 * r.digits)


def test_pi_not_recognized():
    r = recognize_algebraic(_at(120, lambda: acb(arb.pi())), 8, 10**6, 120)
    assert not r.recognized and r.polynomial is None
    assert r.to_json()["minimal_polynomial"] is None
    # 50 digits cannot support a degree 8, height 10^6 search at all
    with pytest.raises(InsufficientPrecision):
        recognize_algebraic(_at(50, lambda: acb(arb.pi())), 8, 10**6, 50)
    r = recognize_algebraic(_at(50, lambda: acb(arb.pi())), 3, 1000, 50)
    assert not r.recognized


def test_insufficient_precision():
    with pytest.raises(InsufficientPrecision):
        recognize_algebraic(acb(arb("1.41421356", "1e-8")), 8, 10**6)


@pytest.mark.parametrize("poly", [[-2, 0, 1], [1, 1, 1], [-5, 0, 0, 1], [3, -7, 0, 2], [1, -1, 1, -1, 1]])
def test_recovers_minimal_polynomials(poly):
    f = fmpz_poly(poly)
    root = _at(150, lambda: f.complex_roots()[0][0])
    r = recognize_algebraic(root, 6, 1000, 120)
    assert r.recognized
    assert r.polynomial == f or r.polynomial == -f
    # irreducible, content one, positive leading coefficient
    assert len(r.polynomial.factor()[1]) == 1 and r.polynomial.factor()[1][0][1] == 1
    assert math.gcd(*r.coefficients) == 1 and r.coefficients[-1] > 0


def test_monotone_in_precision():
    golden = lambda d: _at(d, lambda: acb((1 + arb(5).sqrt()) / 2))
    a = recognize_algebraic(golden(60), 4, 1000, 60)
    b = recognize_algebraic(golden(200), 4, 1000, 200)
    assert a.polynomial == b.polynomial
    assert b.residual <= a.residual


def test_combine_verdict_table():
    yes = recognize_algebraic(_at(60, lambda: acb(0, 1)), 4, 100, 60)
    no = recognize_algebraic(_at(60, lambda: acb(arb.pi())), 4, 100, 60)
    assert combine_verdict(yes, yes) == CM_CANDIDATE
    assert combine_verdict(no, yes) == TRANSCENDENTAL_CANDIDATE
    assert combine_verdict(yes, no) == UNDETERMINED
    assert combine_verdict(no, no) == UNDETERMINED
    assert combine_verdict(None, yes) == UNDETERMINED


@pytest.fixture(scope="module")
def ctx23():
    return make_context(make_signature(2, 3), 130)


@pytest.mark.parametrize("tau,poly,jval", [
    ("i", [1, 0, 1], J_OF_I),
    ("2i", [4, 0, 1], J_OF_2I),
    ("exp(pi*I/3)", [1, -1, 1], J_OF_RHO),
])
def test_classical_cm_points(ctx23, tau, poly, jval):
    pc = classify_point(ctx23, tau)
    assert pc.verdict == CM_CANDIDATE
    assert pc.tau_recognition.polynomial == fmpz_poly(poly)
    J = fmpq(jval, 1728)
    assert pc.j_recognition.polynomial == fmpz_poly([-J.p, J.q])
    assert pc.to_json()["heuristic"] is True


def test_elliptic_point_25():
    c = make_context(make_signature(2, 5), 130)
    pc = classify_point(c, c.constants.zeta2)
    assert pc.verdict == CM_CANDIDATE
    assert pc.tau_recognition.coefficients == [1, -1, 1, -1, 1]
    assert pc.j_recognition.coefficients == [0, 1]


def test_transcendental_candidate_25():
    c = make_context(make_signature(2, 5), 130)
    loc = locate_zero(c, fmpq(2))
    pc = classify_point(c, loc.tau, ClassifierBounds(8, 10**6, 120), j_value=fmpq(2))
    assert pc.verdict == TRANSCENDENTAL_CANDIDATE
    assert pc.j_recognition.coefficients == [-2, 1]
    assert not pc.tau_recognition.recognized
    assert "not proof" in pc.note


def test_determinism(ctx23):
    a = classify_point(ctx23, "0.1+1.3i", ClassifierBounds(4, 1000, 100))
    classify_point(ctx23, "2i")
    b = classify_point(ctx23, "0.1+1.3i", ClassifierBounds(4, 1000, 100))
    assert a.to_json() == b.to_json()


@settings(max_examples=20)
@given(st.integers(-30, 30), st.integers(1, 30), st.integers(1, 30))
def test_quadratic_points_recognized(b, a, c):
    # roots of a x^2 + b x + c with negative discriminant are in the upper half plane
    if b * b - 4 * a * c >= 0:
        return
    f = fmpz_poly([c, b, a])
    cont = math.gcd(a, b, c)
    root = _at(100, lambda: f.complex_roots()[0][0])
    r = recognize_algebraic(root, 4, 1000, 80)
    assert r.recognized
    assert r.coefficients == [c // cont, b // cont, a // cont]
