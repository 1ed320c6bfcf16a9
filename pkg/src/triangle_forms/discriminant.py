"""The weight-2L discriminant analogue

    Delta_2L = (-1)^L (theta J)^L  J^(ceil(L/q) - L)  (J - 1)^(ceil(L/p) - L)
             = w^n_Delta + O(w^(n_Delta + 1)),

built by series arithmetic on the exact Hauptmodul expansion.
"""

from __future__ import annotations

from dataclasses import dataclass

from flint import acb, ctx

from .errors import InconsistencyError, InsufficientOrder
from .groups import Signature, ceil_ratio, derive_constants
from .hauptmodul import hauptmodul_expansion
from .series import TruncatedSeries, series_mul, series_pow, theta_derivative


@dataclass(frozen=True)
class DiscriminantExpansion:
    signature: Signature
    weight: int
    series: TruncatedSeries
    n_delta: int


def delta_exponents(sig: Signature) -> tuple[int, int, int]:
    """(L, exponent of J, exponent of J - 1)."""
    L = derive_constants(sig, prec=64).L
    return L, ceil_ratio(L, sig.q) - L, ceil_ratio(L, sig.p) - L


def delta_from_J(J: TruncatedSeries, sig: Signature, pow_method: str = "binary") -> TruncatedSeries:
    L, eq, ep = delta_exponents(sig)
    out = series_pow(theta_derivative(J), L, pow_method)
    out = series_mul(out, series_pow(J, eq, pow_method))
    out = series_mul(out, series_pow(J - 1, ep, pow_method))
    return out if L % 2 == 0 else -out


def delta_expansion(sig: Signature, N: int, pow_method: str = "binary") -> DiscriminantExpansion:
    """Delta_2L through w^(N-1)."""
    const = derive_constants(sig, prec=64)
    nd = const.n_delta
    if N <= nd:
        raise InsufficientOrder(f"order {N} leaves no provable term (n_Delta = {nd})")
    # relative precision of Delta equals that of J, i.e. order_J + 1 terms
    J = hauptmodul_expansion(sig, max(N - nd - 1, 2)).series
    series = delta_from_J(J, sig, pow_method).truncate(N)
    if series.valuation != nd or series.leading() != 1:
        raise InconsistencyError(
            f"Delta for {sig} has leading term {series.leading()}*w^{series.valuation}, expected w^{nd}")
    return DiscriminantExpansion(sig, 2 * const.L, series, nd)


@dataclass(frozen=True)
class NonvanishingReport:
    tau: acb
    value: acb
    abs_lower: float
    error: float
    nonzero: bool


def delta_nonvanishing_check(exp: DiscriminantExpansion, samples, digits: int = 60) -> list[NonvanishingReport]:
    """Spot check that |Delta(tau)| is bounded away from zero at each sample.

    A sample passes when the lower bound on |Delta| exceeds the evaluation
    error bound.  This is evidence only, not a proof of non-vanishing.
    """
    from .numeric import eval_delta, make_context

    ctx_ = make_context(exp.signature, digits=digits)
    out = []
    for tau in samples:
        ev = eval_delta(ctx_, tau)
        with ctx.workprec(ctx_.prec):
            lower = float(abs(ev.value).lower())
        out.append(NonvanishingReport(ev.tau, ev.value, lower, ev.error, lower > 2 * ev.error and lower > 0))
    return out
