"""Polynomial roots with multiplicities.

Aberth-Ehrlich simultaneous iteration at a chosen decimal precision.
Exact rational polynomials are first split by flint's factorization over
Q: linear factors give exact rational roots, the remaining irreducible
factors are squarefree and go through the iteration.  Ball polynomials are
iterated on their midpoints and nearby roots are clustered.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import mpmath
from flint import acb, arb, ctx, fmpq, fmpq_poly

from .errors import PrecisionExhausted
from .groups import digits_to_bits


@dataclass(frozen=True)
class Root:
    value: acb
    multiplicity: int
    exact: Optional[fmpq] = None


def _horner_with_derivative(coeffs, z):
    p = coeffs[-1]
    dp = mpmath.mpc(0)
    for c in reversed(coeffs[:-1]):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def aberth(coeffs: Sequence, dps: int = 50, maxiter: int = 500) -> list:
    """All roots of sum coeffs[k] z^k (mpmath complex numbers, low to high)."""
    with mpmath.workdps(dps + 10):
        cs = [mpmath.mpc(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        n = len(cs) - 1
        if n < 1:
            return []
        lead = cs[-1]
        cs = [c / lead for c in cs]
        bound = 1 + max(abs(c) for c in cs[:-1])
        radius = min(bound, max(abs(cs[0]) ** (mpmath.mpf(1) / n), mpmath.mpf("1e-3")))
        z = [radius * mpmath.expj(2 * mpmath.pi * (k + 0.25) / n) for k in range(n)]
        tol = mpmath.mpf(10) ** (-dps)
        for _ in range(maxiter):
            worst = mpmath.mpf(0)
            for k in range(n):
                p, dp = _horner_with_derivative(cs, z[k])
                if p == 0:
                    continue
                ratio = p / dp if dp != 0 else mpmath.mpc(tol)
                s = mpmath.fsum(1 / (z[k] - z[j]) for j in range(n) if j != k and z[k] != z[j])
                step = ratio / (1 - ratio * s)
                z[k] -= step
                worst = max(worst, abs(step) / max(abs(z[k]), 1))
            if worst < tol:
                break
        return [mpmath.mpc(r) for r in z]


def _to_mpc(x) -> mpmath.mpc:
    if isinstance(x, fmpq):
        return mpmath.mpf(int(x.p)) / int(x.q)
    if isinstance(x, acb):
        return mpmath.mpc(mpmath.mpf(x.real.mid().str(mpmath.mp.dps + 5, radius=False)),
                          mpmath.mpf(x.imag.mid().str(mpmath.mp.dps + 5, radius=False)))
    return mpmath.mpc(x)


def _to_acb(z: mpmath.mpc, rad: float = 0.0) -> acb:
    re = arb(mpmath.nstr(z.real, mpmath.mp.dps, min_fixed=-mpmath.inf, max_fixed=mpmath.inf))
    im = arb(mpmath.nstr(z.imag, mpmath.mp.dps, min_fixed=-mpmath.inf, max_fixed=mpmath.inf))
    if rad:
        re, im = re + arb(0, rad), im + arb(0, rad)
    return acb(re, im)


def _root_radius(coeffs, z) -> float:
    # Newton-step size times degree: a heuristic enclosure for a simple root
    p, dp = _horner_with_derivative(coeffs, z)
    n = len(coeffs) - 1
    if dp == 0:
        return float("inf")
    return float(n * abs(p / dp)) + float(abs(z)) * 10.0 ** (-mpmath.mp.dps + 5)


def exact_polynomial_roots(coeffs: Sequence[fmpq], digits: int = 60) -> list[Root]:
    poly = fmpq_poly(list(coeffs))
    if poly.degree() < 1:
        return []
    _, factors = poly.factor()
    out: list[Root] = []
    with mpmath.workdps(digits + 10), ctx.workprec(digits_to_bits(digits + 10)):
        for f, mult in factors:
            fc = f.coeffs()
            if f.degree() == 1:
                r = -fc[0] / fc[1]
                out.append(Root(acb(arb(r)), mult, r))
                continue
            mp = [_to_mpc(c) for c in fc]
            for z in aberth(mp, dps=digits + 5):
                out.append(Root(_to_acb(z, _root_radius(mp, z)), mult))
    return out


def ball_polynomial_roots(coeffs: Sequence[acb], digits: int = 60) -> list[Root]:
    """Roots of a polynomial with ball coefficients; clusters give multiplicity."""
    with mpmath.workdps(digits + 10), ctx.workprec(digits_to_bits(digits + 10)):
        mp = [_to_mpc(c) for c in coeffs]
        while mp and mp[-1] == 0:
            mp.pop()
        n = len(mp) - 1
        if n < 1:
            return []
        zs = aberth(mp, dps=digits)
        rel = max((float(c.rad()) / max(float(abs(c).upper()), 1e-300)) if isinstance(c, acb) else 0.0
                  for c in coeffs) or 10.0 ** (-digits)
        clusters: list[list] = []
        for z in zs:
            for cl in clusters:
                m = len(cl) + 1
                tol = 10 * max(1.0, float(abs(cl[0]))) * rel ** (1.0 / m)
                if abs(z - cl[0]) < tol:
                    cl.append(z)
                    break
            else:
                clusters.append([z])
        out = []
        for cl in clusters:
            centre = mpmath.fsum(cl) / len(cl)
            spread = max(float(abs(z - centre)) for z in cl)
            rad = max(spread, float(abs(centre)) * rel ** (1.0 / len(cl)))
            if rad > 1e-3 * max(1.0, float(abs(centre))):
                raise PrecisionExhausted("root cluster too wide for the coefficient precision")
            out.append(Root(_to_acb(centre, rad), len(cl)))
        return out
