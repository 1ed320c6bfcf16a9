"""Normalized Hauptmodul J = w^-1 + sum_{k>=0} c_k w^k with exact rational c_k.

J is the inverse of the Schwarz triangle map with angles pi/q at J = 0,
pi/p at J = 1 and 0 at J = oo.  In the scale-free variable u = log w the
defining equation is autonomous,

    {J, u} + (dJ/du)^2 R(J) = 0,
    R(J) = (1 - n0^2) / (2 J^2) + (1 - n1^2) / (2 (1 - J)^2)
           + (1 - n0^2 - n1^2 + ninf^2) / (2 J (1 - J)),

with n0 = 1/q, n1 = 1/p, ninf = 0, so every constant is rational.

Construction: in x = 1/J the uniformizing variable is a ratio of two
solutions of y'' + Q(x) y = 0 with Q = R(1/x) / (2 x^4).  The indicial
equation at x = 0 has the double root 1/2 (the cusp), so Frobenius gives
y1 = x^(1/2) A(x) and y2 = y1 log x + x^(1/2) B(x).  The local parameter is
w = x exp(B/A), normalized to leading coefficient 1; reverting gives x(w)
and J = 1/x(w).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from threading import Lock

from flint import fmpq

from .errors import RecursionInconsistency, ValidationError
from .fields import RATIONAL
from .groups import Signature, reciprocal
from .series import (
    TruncatedSeries,
    series_exp,
    series_inverse,
    series_mul,
    series_revert,
    theta_derivative,
)


@dataclass(frozen=True)
class SchwarzianRHS:
    """R(J) = a/J^2 + b/(1-J)^2 + c/(J(1-J)), with nu_inf carried for completeness."""

    nu0_sq: Fraction
    nu1_sq: Fraction
    nuinf_sq: Fraction

    @property
    def a(self) -> Fraction:
        return (1 - self.nu0_sq) / 2

    @property
    def b(self) -> Fraction:
        return (1 - self.nu1_sq) / 2

    @property
    def c(self) -> Fraction:
        return (1 - self.nu0_sq - self.nu1_sq + self.nuinf_sq) / 2


def schwarzian_rhs(sig: Signature) -> SchwarzianRHS:
    return SchwarzianRHS(reciprocal(sig.q) ** 2, reciprocal(sig.p) ** 2, Fraction(0))


@dataclass(frozen=True)
class HauptmodulExpansion:
    signature: Signature
    series: TruncatedSeries
    order: int

    def coefficient(self, k: int):
        """c_k, the coefficient of w^k (k >= -1)."""
        return self.series[k]


def _q(x: Fraction) -> fmpq:
    return fmpq(x.numerator, x.denominator)


def frobenius_coefficients(rhs: SchwarzianRHS, n: int) -> tuple[list, list]:
    """A_0..A_{n-1} and B_0..B_{n-1} for the solutions at the cusp.

    The normalized equation is x^2 (x-1)^2 y'' + (p0 + p1 x + p2 x^2) y = 0.
    With y = sum a_m(r) x^(m+r) the recursion is

        F(m+r) a_m + G1(m+r) a_{m-1} + G2(m+r) a_{m-2} = 0,
        F(s) = s(s-1) + p0,  G1(s) = -2(s-1)(s-2) + p1,  G2(s) = (s-2)(s-3) + p2,

    and B = d/dr A at the double indicial root r = 1/2.
    """
    if rhs.nuinf_sq != 0:
        raise ValidationError("only cusps (nu_inf = 0) are supported")
    a, b, c = _q(rhs.a), _q(rhs.b), _q(rhs.c)
    p0 = (a + b - c) / 2
    p1 = (c - 2 * a) / 2
    p2 = a / 2
    if p0 != fmpq(1, 4):
        raise RecursionInconsistency(f"indicial constant {p0} != 1/4")
    r = fmpq(1, 2)
    A, B = [fmpq(1)], [fmpq(0)]
    for m in range(1, n):
        s = m + r
        F = (s - r) ** 2          # = m^2, never zero for m >= 1
        dF = 2 * (s - r)
        G1 = -2 * (s - 1) * (s - 2) + p1
        dG1 = -2 * ((s - 1) + (s - 2))
        if m >= 2:
            G2 = (s - 2) * (s - 3) + p2
            dG2 = (s - 2) + (s - 3)
            a2, b2 = A[m - 2], B[m - 2]
        else:
            G2 = dG2 = a2 = b2 = fmpq(0)
        am = -(G1 * A[m - 1] + G2 * a2) / F
        bm = -(dG1 * A[m - 1] + G1 * B[m - 1] + dG2 * a2 + G2 * b2) / F - am * dF / F
        A.append(am)
        B.append(bm)
    return A, B


def expansion_for_rhs(rhs: SchwarzianRHS, order: int) -> TruncatedSeries:
    """Normalized solution w^-1 + O(1) for arbitrary rational exponents."""
    # J = 1/x(w) with x(w) known mod w^(M+1) needs M = order + 1 Frobenius terms
    m = order + 1
    A, B = frobenius_coefficients(rhs, m)
    As = TruncatedSeries.from_coefficients(A, 0, m)
    Bs = TruncatedSeries.from_coefficients(B, 0, m)
    log_ratio = series_mul(Bs, series_inverse(As))
    w_of_x = series_exp(log_ratio).shift(1)
    x_of_w = series_revert(w_of_x)
    J = series_inverse(x_of_w)
    if J.valuation != -1 or J.leading() != 1:
        raise RecursionInconsistency(f"unexpected leading term for {rhs}: {J!r}")
    return J.truncate(order)


def _build(sig: Signature, order: int) -> TruncatedSeries:
    return expansion_for_rhs(schwarzian_rhs(sig), order)


_cache: dict[Signature, TruncatedSeries] = {}
_cache_lock = Lock()


def hauptmodul_expansion(sig: Signature, N: int, check: bool = False) -> HauptmodulExpansion:
    """J_Gamma through w^(N-1), i.e. with c_0 .. c_{N-1} known."""
    if N < 2:
        raise ValidationError("order N must be >= 2")
    with _cache_lock:
        cached = _cache.get(sig)
    if cached is None or cached.order < N:
        J = _build(sig, N)
        with _cache_lock:
            if sig not in _cache or _cache[sig].order < N:
                _cache[sig] = J
    else:
        J = cached.truncate(N)
    exp = HauptmodulExpansion(sig, J, N)
    if check:
        residual = verify_schwarzian(exp)
        if not residual.is_zero():
            raise RecursionInconsistency(f"Schwarzian residual {residual!r} for {sig}")
    return exp


def clear_cache() -> None:
    with _cache_lock:
        _cache.clear()


def schwarzian_residual(J: TruncatedSeries, rhs: SchwarzianRHS) -> TruncatedSeries:
    """{J,u} + (J_u)^2 R(J) with d/du = theta = w d/dw."""
    d1 = theta_derivative(J)
    d2 = theta_derivative(d1)
    d3 = theta_derivative(d2)
    inv_d1 = series_inverse(d1)
    t1 = d3 * inv_d1
    t2 = d2 * inv_d1
    schwarz = t1 - (t2 * t2) * fmpq(3, 2)
    inv_J = series_inverse(J)
    inv_1mJ = series_inverse(1 - J)
    R = inv_J * inv_J * _q(rhs.a) + inv_1mJ * inv_1mJ * _q(rhs.b) + inv_J * inv_1mJ * _q(rhs.c)
    return schwarz + d1 * d1 * R


def verify_schwarzian(exp: HauptmodulExpansion) -> TruncatedSeries:
    return schwarzian_residual(exp.series, schwarzian_rhs(exp.signature))
