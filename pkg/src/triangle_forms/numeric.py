"""High-precision evaluation at points of the upper half plane.

The exact expansions live in the variable w = qtilde3; a point tau maps to
w = alpha3 * exp(2 pi i tau / h3).  alpha3 is not known in closed form
here, so it is solved for numerically from the normalization of J:

* finite p: J - 1 vanishes to order p at zeta1, so w(zeta1) is a simple
  root of the (p-1)-th derivative J^(p-1)(w), found by Newton's method
  seeded from the root cluster of the truncated equation J(w) = 1;
* p = q = oo: zeta1 is a cusp, so the invariance J(M1 tau0) = J(tau0) at
  tau0 = i is used instead.

J is real on the wall Re tau = -cos(pi/p), where w(tau) is positive, so
arg alpha3 = 2 pi cos(pi/p) / h3.  alpha3 is real only when p = 2.

Truncation errors are estimated from a coefficient ratio test; the bounds
are heuristic (not rigorous), but every reported value carries one.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Optional, Union

import mpmath
from flint import acb, arb, ctx, fmpq

from .discriminant import delta_expansion
from .errors import (
    NewtonDivergence,
    NonrealAlpha,
    OutsideReliableDisk,
    PrecisionExhausted,
    ValidationError,
)
from .groups import INF, GroupConstants, Signature, derive_constants, digits_to_bits, mobius
from .hauptmodul import hauptmodul_expansion
from .roots import aberth
from .series import TruncatedSeries, derivative

RELIABLE_FRACTION = 0.7
TAIL_SAFETY = 10.0


def default_digits() -> int:
    return int(os.environ.get("TF_DEFAULT_DIGITS", "120"))


# -- helpers -------------------------------------------------------------

def to_acb(x) -> acb:
    if isinstance(x, acb):
        return x
    if isinstance(x, arb):
        return acb(x)
    if isinstance(x, fmpq):
        return acb(arb(x))
    if isinstance(x, complex):
        return acb(x.real, x.imag)
    if isinstance(x, str):
        return parse_complex(x)
    return acb(x)


_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(
    rf"^(?P<re>[+-]?{_NUM})?(?:(?P<sign>[+-])?(?P<im>{_NUM})?\*?[ij])?$")


def parse_complex(text: str) -> acb:
    """Parse "a+bi" decimals, or a sympy expression such as exp(pi*I/3)."""
    compact = "".join(text.split())
    m = _COMPLEX_RE.match(compact)
    has_imag = compact.endswith(("i", "j"))
    if m and compact:
        re_s, sign, im_s = m.group("re"), m.group("sign"), m.group("im")
        if has_imag and re_s is not None and sign is None:
            # "2i" or "-2.5i": the real group swallowed the imaginary part
            if im_s is not None:
                re_s = None
            else:
                re_s, sign, im_s = None, "-" if re_s.startswith("-") else "+", re_s.lstrip("+-")
        re_ = arb(re_s) if re_s else arb(0)
        im = arb(0)
        if has_imag:
            im = arb(im_s) if im_s else arb(1)
            if sign == "-":
                im = -im
        return acb(re_, im)
    import sympy

    try:
        expr = sympy.sympify(text.replace("^", "**"), locals={"i": sympy.I, "j": sympy.I})
    except (sympy.SympifyError, SyntaxError, TypeError, ValueError) as exc:
        raise ValidationError(f"cannot parse complex number {text!r}") from exc
    if getattr(expr, "free_symbols", None) or not isinstance(expr, sympy.Expr):
        raise ValidationError(f"{text!r} is not a closed-form number")
    digits = int(ctx.prec * 0.30103) + 5
    val = sympy.N(expr, digits)
    re_, im = sympy.re(val), sympy.im(val)
    return acb(arb(str(sympy.Float(re_, digits))), arb(str(sympy.Float(im, digits))))


def _arb_coeffs(series: TruncatedSeries) -> list:
    if series.field.exact:
        return [acb(arb(c)) for c in series.coeffs]
    return list(series.coeffs)


def _abs_float(x) -> float:
    if isinstance(x, fmpq):
        x = arb(x)
    v = abs(x).mid()
    if v == 0:
        return 0.0
    # avoid float underflow: go through log10
    return float(mpmath.mpf(v.str(20, radius=False)))


def ratio_radius(series: TruncatedSeries) -> float:
    """Convergence radius from |c_k / c_{k+1}| over the last 20% of terms."""
    mags = [(series.valuation + i, _abs_float(c)) for i, c in enumerate(series.coeffs)]
    mags = [(k, m) for k, m in mags if m > 0 and k >= 0]
    if len(mags) < 6:
        return math.inf
    tail = mags[int(len(mags) * 0.8):]
    if len(tail) < 3:
        tail = mags[-3:]
    ratios = []
    for (k0, m0), (k1, m1) in zip(tail, tail[1:]):
        # geometric-mean ratio across gaps of zero coefficients
        ratios.append((m0 / m1) ** (1.0 / (k1 - k0)))
    ratios.sort()
    return ratios[len(ratios) // 2]


def _sum_with_tail(coeffs: list, valuation: int, x: acb, radius: float):
    """Sum of coeffs[i] x^(valuation+i) and a ratio-test tail estimate."""
    acc = acb(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    if valuation:
        acc = acc * x ** valuation
    ax = _abs_float(x)
    n = len(coeffs)
    if n == 0:
        return acc, 0.0
    rho = ax / radius if radius and math.isfinite(radius) else 0.0
    if rho >= 1:
        return acc, math.inf
    last = max(_abs_float(c) for c in coeffs[-3:])
    logterm = math.log10(last) + (valuation + n - 1) * math.log10(ax) if last > 0 and ax > 0 else -math.inf
    if logterm == -math.inf:
        return acc, 0.0
    tail = TAIL_SAFETY * 10.0 ** logterm * rho / (1 - rho) if rho > 0 else 10.0 ** logterm
    return acc, tail


def _with_error(value: acb, err: float) -> acb:
    if err <= 0:
        return value
    e = arb(0, arb(err))
    return acb(value.real + e, value.imag + e)


def ball_error(value: acb) -> float:
    return float(max(value.real.rad(), value.imag.rad()))


# -- alpha3 ----------------------------------------------------------------

@dataclass(frozen=True)
class Alpha3Result:
    signature: Signature
    value: acb
    error: float
    order: int
    prec: int
    w_star: acb
    method: str
    expected_phase: acb

    @property
    def modulus(self) -> arb:
        return abs(self.value)


def _order_for(h3: float, im_tau: float, digits: int) -> int:
    decay = 2 * math.pi * im_tau / h3
    n = int(math.ceil(1.25 * digits * math.log(10) / decay)) + 20
    return max(30, min(n, 600))


def _newton(f_coeffs, df_coeffs, valuation_f, valuation_df, x0: acb, prec: int, maxiter: int = 200):
    x = x0
    step = None
    tol = mpmath.mpf(2) ** (-prec + 12)
    for _ in range(maxiter):
        fx, _ = _sum_with_tail(f_coeffs, valuation_f, x, math.inf)
        dfx, _ = _sum_with_tail(df_coeffs, valuation_df, x, math.inf)
        step = (fx / dfx).mid()
        x = (x - step).mid()
        if _abs_float(step) <= float(tol) * max(_abs_float(x), 1.0) or _abs_float(step) == 0:
            return x, _abs_float(step)
    raise NewtonDivergence(f"Newton did not converge (last step {step})")


def _seed_cluster(J: TruncatedSeries, target, cluster: int, nterms: int = 40) -> mpmath.mpc:
    """Centroid of the ``cluster`` smallest roots of w*(J_trunc(w) - target)."""
    poly = [mpmath.mpf(int(c.p)) / int(c.q) for c in J.truncate(min(J.order, nterms - 1)).coeffs]
    poly = list(poly)
    poly[1] -= target  # index 1 is the constant term of J after multiplying by w
    with mpmath.workdps(60):
        roots = aberth(poly, dps=20, maxiter=120)  # seeds only; Newton refines
        roots.sort(key=abs)
        pick = roots[:cluster]
        return mpmath.fsum(pick) / len(pick)


@lru_cache(maxsize=64)
def compute_alpha3(sig: Signature, digits: Optional[int] = None, order: Optional[int] = None) -> Alpha3Result:
    digits = digits or default_digits()
    prec = digits_to_bits(digits)
    const = derive_constants(sig, prec)
    h3f = float(const.h3)
    with ctx.workprec(prec):
        cp = const.h3_exact[0].value() / 2
        expected_phase = acb.exp_pi_i(acb(2 * cp / const.h3))
        if sig.p is not INF:
            N = order or _order_for(h3f, float(const.zeta1.imag.mid()), digits)
            J = hauptmodul_expansion(sig, N).series
            D = J
            for _ in range(sig.p - 1):
                D = derivative(D)
            dD = derivative(D)
            seed = _seed_cluster(J, 1, sig.p)
            x0 = acb(arb(str(seed.real)), arb(str(seed.imag)))
            x, last = _newton(_arb_coeffs(D), _arb_coeffs(dD), D.valuation, dD.valuation, x0, prec)
            Jx, tailJ = _sum_with_tail(_arb_coeffs(J), J.valuation, x, ratio_radius(J))
            if _abs_float(Jx - 1) > max(1e3 * tailJ, 10.0 ** (-digits / 2)):
                raise NewtonDivergence(f"critical point found has J = {Jx}, not 1")
            _, tailD = _sum_with_tail(_arb_coeffs(D), D.valuation, x, ratio_radius(D))
            dDx, _ = _sum_with_tail(_arb_coeffs(dD), dD.valuation, x, math.inf)
            err_x = tailD / max(_abs_float(dDx), 1e-300) + last
            shift = acb.exp_pi_i(2 * const.zeta1 / const.h3)
            method = f"Newton on d^{sig.p - 1}J/dw^{sig.p - 1} at zeta1"
        else:
            # (oo, oo, oo): J(tau0) = J(M1 tau0) with tau0 = i, M1 tau0 = -2 + i
            N = order or _order_for(h3f, 1.0, digits)
            J = hauptmodul_expansion(sig, N).series
            tau0 = acb(0, 1)
            omega = acb.exp_pi_i(2 * (mobius(const.M1, tau0) - tau0) / const.h3)
            # w*(J(w) - J(omega w)) as a power series in w
            cs = [c * (1 - omega ** k) for k, c in zip(range(-1, N), _arb_coeffs(J))]
            G = cs  # valuation 0 after multiplying by w
            dG = [k * c for k, c in enumerate(G)][1:]
            with mpmath.workdps(60):
                mp = [mpmath.mpc(float(c.real.mid()), float(c.imag.mid())) for c in G[:40]]
                roots = aberth(mp, dps=20, maxiter=120)
                want = complex(expected_phase.real.mid(), expected_phase.imag.mid())
                roots = [r for r in roots if abs(r) > 0]
                roots.sort(key=lambda r: (round(abs(complex(r) / abs(r) - want), 3), abs(r)))
                seed = roots[0]
            x0 = acb(arb(str(seed.real)), arb(str(seed.imag)))
            x, last = _newton(G, dG, 0, 0, x0, prec)
            G_series = TruncatedSeries.from_coefficients(G, 0, None, _ball_field(prec))
            _, tailG = _sum_with_tail(G, 0, x, ratio_radius(G_series))
            dGx, _ = _sum_with_tail(dG, 0, x, math.inf)
            err_x = tailG / max(_abs_float(dGx), 1e-300) + last
            shift = acb.exp_pi_i(2 * tau0 / const.h3)
            method = "Newton on J(i) = J(M1 i)"
        alpha = x / shift
        rel = err_x / max(_abs_float(x), 1e-300)
        err = rel * _abs_float(alpha) + ball_error(alpha)
        rotated = alpha / expected_phase
        if _abs_float(rotated.imag) > 10 * err + 10.0 ** (-digits / 2) or float(rotated.real.mid()) <= 0:
            raise NonrealAlpha(f"alpha3 = {alpha} is not a positive multiple of the expected phase")
        value = _with_error(alpha.mid(), err)
    return Alpha3Result(sig, value, err, N, prec, x, method, expected_phase)


def _ball_field(prec):
    from .fields import BallField

    return BallField(prec)


# -- evaluation context ----------------------------------------------------

@dataclass(frozen=True)
class EvalContext:
    signature: Signature
    constants: GroupConstants
    J: TruncatedSeries
    order: int
    prec: int
    digits: int
    radius_estimate: float
    rho_max: float
    alpha3: Alpha3Result

    @cached_property
    def J_coeffs(self) -> list:
        with ctx.workprec(self.prec):
            return _arb_coeffs(self.J)

    @cached_property
    def dJ(self) -> TruncatedSeries:
        return derivative(self.J)

    @cached_property
    def dJ_coeffs(self) -> list:
        with ctx.workprec(self.prec):
            return _arb_coeffs(self.dJ)

    @cached_property
    def delta(self) -> TruncatedSeries:
        nd = self.constants.n_delta
        return delta_expansion(self.signature, nd + self.order + 1).series

    @cached_property
    def delta_coeffs(self) -> list:
        with ctx.workprec(self.prec):
            return _arb_coeffs(self.delta)

    def q_tilde(self, tau) -> acb:
        with ctx.workprec(self.prec):
            tau = to_acb(tau)
            return self.alpha3.value * acb.exp_pi_i(2 * tau / self.constants.h3)

    def tau_of(self, w: acb) -> acb:
        """Inverse of q_tilde, reduced to the strip |Re tau| <= h3/2."""
        with ctx.workprec(self.prec):
            h3 = self.constants.h3
            tau = h3 / (2 * acb.pi() * acb(0, 1)) * (w.log() - self.alpha3.value.log())
            k = round(float(tau.real.mid()) / float(h3))
            return tau - k * h3

    def _check_point(self, tau: acb, w: acb):
        if not float(tau.imag.mid()) > 0:
            raise OutsideReliableDisk(f"tau = {tau} is not in the upper half plane")
        if _abs_float(w) > self.rho_max:
            raise OutsideReliableDisk(
                f"|qtilde(tau)| = {_abs_float(w):.4g} exceeds the reliable radius {self.rho_max:.4g}")


def _auto_order(sig: Signature, const: GroupConstants, digits: int) -> int:
    ims = [float(z.imag.mid()) for z, o in ((const.zeta1, sig.p), (const.zeta2, sig.q)) if o is not INF]
    im_ref = min(ims) if ims else 0.5
    return _order_for(float(const.h3), im_ref, digits)


@lru_cache(maxsize=32)
def make_context(sig: Signature, digits: Optional[int] = None, order: Optional[int] = None) -> EvalContext:
    digits = digits or default_digits()
    prec = digits_to_bits(digits)
    const = derive_constants(sig, prec)
    N = order or _auto_order(sig, const, digits)
    alpha = compute_alpha3(sig, digits)
    J = hauptmodul_expansion(sig, N).series
    R = ratio_radius(J)
    R = min(R, _abs_float(alpha.value))  # the true radius is |alpha3|
    return EvalContext(sig, const.with_alpha3(alpha.value), J, N, prec, digits, R,
                       RELIABLE_FRACTION * R, alpha)


# -- evaluation ------------------------------------------------------------

@dataclass(frozen=True)
class Evaluation:
    tau: acb
    w: acb
    value: acb
    error: float
    terms: int


def _evaluate(ctx_: EvalContext, coeffs: list, valuation: int, radius: float, tau) -> Evaluation:
    with ctx.workprec(ctx_.prec):
        tau = to_acb(tau)
        w = ctx_.q_tilde(tau)
        ctx_._check_point(tau, w)
        val, tail = _sum_with_tail(coeffs, valuation, w, radius)
        err = tail + ball_error(val)
        if not math.isfinite(err):
            raise PrecisionExhausted("tail estimate diverged")
        return Evaluation(tau, w, _with_error(val.mid(), err), err, len(coeffs))


def eval_J(ctx_: EvalContext, tau) -> Evaluation:
    return _evaluate(ctx_, ctx_.J_coeffs, ctx_.J.valuation, ctx_.radius_estimate, tau)


def eval_delta(ctx_: EvalContext, tau) -> Evaluation:
    return _evaluate(ctx_, ctx_.delta_coeffs, ctx_.delta.valuation, ctx_.radius_estimate, tau)


def eval_form(ctx_: EvalContext, series: TruncatedSeries, tau) -> Evaluation:
    with ctx.workprec(ctx_.prec):
        coeffs = _arb_coeffs(series)
    radius = min(ratio_radius(series), ctx_.radius_estimate) if series.precision >= 6 else ctx_.radius_estimate
    return _evaluate(ctx_, coeffs, series.valuation, radius, tau)


# -- zero location -------------------------------------------------------

@dataclass(frozen=True)
class ZeroLocation:
    root: acb
    tau: acb
    w: Optional[acb]
    residual: float
    method: str


def locate_zero(ctx_: EvalContext, r) -> ZeroLocation:
    """A point tau with J(tau) = r, in the strip |Re tau| <= h3/2."""
    const = ctx_.constants
    if isinstance(r, (int, fmpq)) and r == 0:
        return ZeroLocation(to_acb(r), const.zeta2, None, 0.0, "elliptic point zeta2 (J = 0)")
    if isinstance(r, (int, fmpq)) and r == 1:
        return ZeroLocation(to_acb(r), const.zeta1, None, 0.0, "elliptic point zeta1 (J = 1)")
    with ctx.workprec(ctx_.prec):
        r = to_acb(r)
        # J is branched over 0 and 1, so Newton degrades as r approaches them
        near = 10.0 ** (-ctx_.digits / 4)
        if r.contains(0) or (r - 1).contains(0) or min(_abs_float(r), _abs_float(r - 1)) < near:
            raise OutsideReliableDisk("root is numerically an elliptic value but not exactly 0 or 1")
        f = list(ctx_.J_coeffs)
        f[1] = f[1] - r  # constant term sits at index 1 (valuation -1)
        x = None
        for seed in ("inverse", "polynomial"):
            if seed == "inverse":
                x0 = (1 / r).mid()
            else:
                target = mpmath.mpc(r.real.mid().str(30, radius=False), r.imag.mid().str(30, radius=False))
                z = _seed_cluster(ctx_.J, target, 1)
                x0 = acb(arb(str(z.real)), arb(str(z.imag)))
            if _abs_float(x0) > ctx_.rho_max:
                continue
            try:
                x, _ = _newton(f, ctx_.dJ_coeffs, -1, ctx_.dJ.valuation, x0, ctx_.prec)
            except NewtonDivergence:
                continue
            if _abs_float(x) <= ctx_.rho_max:
                break
            x = None
        if x is None:
            raise OutsideReliableDisk(f"no preimage of {r} found inside the reliable disk")
        ev = eval_J(ctx_, ctx_.tau_of(x))
        residual = _abs_float(ev.value - r.mid())
        if residual > max(100 * (ev.error + ball_error(r)), 10.0 ** (-ctx_.digits / 2)):
            raise NewtonDivergence(f"located point has |J - r| = {residual:.3g}")
        # first-order propagation of the value error back to w, then to tau
        dJx, _ = _sum_with_tail(ctx_.dJ_coeffs, ctx_.dJ.valuation, x, math.inf)
        err_w = (residual + ev.error + ball_error(r)) / max(_abs_float(dJx), 1e-300)
        err_tau = err_w / _abs_float(x) * float(ctx_.constants.h3) / (2 * math.pi)
        tau = _with_error(ctx_.tau_of(x).mid(), err_tau)
        return ZeroLocation(r, tau, x, residual, "Newton on J(w) = r")
