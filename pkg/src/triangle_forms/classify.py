"""Algebraicity recognition and CM-candidate classification of points.

A point tau of the upper half plane is a CM point for the group exactly
when both tau and J(tau) are algebraic.  Algebraicity is not decidable
from finitely many digits, so the test here is a search: LLL on the
lattice spanned by 1, z, ..., z^d (degree ascending) finds a small integer
relation, which is then checked at the full available precision.

Verdicts are heuristic.  "transcendental-candidate" only means that no
polynomial within the configured degree and height bounds was found.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from flint import acb, arb, ctx, fmpq, fmpz_mat, fmpz_poly

from .errors import InsufficientPrecision, PrecisionError
from .groups import digits_to_bits
from .numeric import EvalContext, ball_error, eval_J, to_acb

CM_CANDIDATE = "CM-candidate"
TRANSCENDENTAL_CANDIDATE = "transcendental-candidate"
UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class ClassifierBounds:
    max_degree: int = 8
    max_height: int = 10**6
    digits: int = 120

    def to_json(self) -> dict:
        return {"max_degree": self.max_degree, "max_height": self.max_height, "digits": self.digits}


@dataclass(frozen=True)
class RecognitionResult:
    recognized: bool
    polynomial: Optional[fmpz_poly]
    residual: float
    max_degree: int
    max_height: int
    digits: int
    note: str = ""

    @property
    def coefficients(self) -> list[int]:
        return [int(c) for c in self.polynomial.coeffs()] if self.polynomial is not None else []

    def to_json(self) -> dict:
        return {
            "recognized": self.recognized,
            "minimal_polynomial": [str(c) for c in self.coefficients] if self.recognized else None,
            "polynomial_text": str(self.polynomial) if self.recognized else None,
            "residual": self.residual if math.isfinite(self.residual) else None,
            "search_bounds": {"max_degree": self.max_degree, "max_height": self.max_height,
                              "digits": self.digits},
            "note": self.note,
        }


def _height(poly: fmpz_poly) -> int:
    return max(abs(int(c)) for c in poly.coeffs())


def _normalize(poly: fmpz_poly) -> fmpz_poly:
    cs = [int(c) for c in poly.coeffs()]
    g = math.gcd(*cs)
    if cs[-1] < 0:
        g = -g
    return fmpz_poly([c // g for c in cs])


def _eval_abs_upper(poly: fmpz_poly, z: acb) -> float:
    acc = acb(0)
    for c in reversed(poly.coeffs()):
        acc = acc * z + int(c)
    return float(abs(acc).upper())


def _available_digits(z: acb, requested: int) -> int:
    rad = ball_error(z)
    if rad == 0:
        return requested
    scale = max(float(abs(z).upper()), 1.0)
    return min(requested, int(math.floor(-math.log10(rad / scale))))


def _relation(powers: list, scale_digits: int, use_imag: bool) -> list[fmpz_poly]:
    """Candidate integer relations among the given powers, from the LLL basis."""
    n = len(powers)
    S = arb(10) ** scale_digits
    rows = []
    for i, zi in enumerate(powers):
        row = [1 if j == i else 0 for j in range(n)]
        row.append(int((zi.real * S).mid().floor().unique_fmpz()))
        if use_imag:
            row.append(int((zi.imag * S).mid().floor().unique_fmpz()))
        rows.append(row)
    reduced = fmpz_mat(rows).lll()
    out = []
    for i in range(reduced.nrows()):
        cs = [int(reduced[i, j]) for j in range(n)]
        if any(cs):
            while cs and cs[-1] == 0:
                cs.pop()
            if len(cs) >= 2:
                out.append(fmpz_poly(cs))
    return out


def recognize_algebraic(z, max_degree: int = 8, max_height: int = 10**6,
                        digits: int = 120) -> RecognitionResult:
    """Smallest-degree integer polynomial of height <= max_height vanishing at z.

    The lattice search runs at roughly half of the available digits and
    every candidate is re-checked at full precision, where it must satisfy
    |P(z)| < 10^(-0.8 digits).
    """
    prec = digits_to_bits(digits + 10)
    with ctx.workprec(prec):
        z = to_acb(z)
        avail = _available_digits(z, digits)
        need = 2 * max_degree * math.log10(max(max_height, 2))
        if ball_error(z) >= 10.0 ** (-need):
            raise InsufficientPrecision(
                f"ball radius {ball_error(z):.3g} too wide for degree {max_degree}, height {max_height}")
        tol_exp = 0.8 * avail
        use_imag = not z.imag.contains(0)
        powers = [acb(1)]
        for _ in range(max_degree):
            powers.append(powers[-1] * z)
        # spurious relations have height about S^(cols/(d+1)); keep them well above H
        cols = 2 if use_imag else 1
        for d in range(1, max_degree + 1):
            search = (d + 1) / cols * math.log10(max(max_height, 2)) + 10
            search = int(min(max(search, avail / 2), avail - 5))
            best = None
            for cand in _relation(powers[:d + 1], search, use_imag):
                for fac, _ in cand.factor()[1]:
                    fac = _normalize(fac)
                    if fac.degree() < 1 or _height(fac) > max_height:
                        continue
                    res = _eval_abs_upper(fac, z)
                    if res < 10.0 ** (-tol_exp) and (best is None or (fac.degree(), _height(fac)) <
                                                      (best[0].degree(), _height(best[0]))):
                        best = (fac, res)
            if best is not None:
                return RecognitionResult(True, best[0], best[1], max_degree, max_height, avail,
                                         f"lattice search at {search} digits, verified at {avail}")
        return RecognitionResult(False, None, math.inf, max_degree, max_height, avail,
                                 "no relation within bounds")


@dataclass(frozen=True)
class PointClassification:
    tau: acb
    j_value: Optional[acb]
    tau_recognition: Optional[RecognitionResult]
    j_recognition: Optional[RecognitionResult]
    verdict: str
    note: str = ""
    heuristic: bool = field(default=True)

    def to_json(self) -> dict:
        from .io import acb_to_json

        return {
            "tau": acb_to_json(self.tau),
            "j_value": acb_to_json(self.j_value) if self.j_value is not None else None,
            "tau_recognition": self.tau_recognition.to_json() if self.tau_recognition else None,
            "j_recognition": self.j_recognition.to_json() if self.j_recognition else None,
            "verdict": self.verdict,
            "heuristic": True,
            "note": self.note,
        }


def combine_verdict(tau_rec: Optional[RecognitionResult], j_rec: Optional[RecognitionResult]) -> str:
    if tau_rec is None or j_rec is None:
        return UNDETERMINED
    if tau_rec.recognized and j_rec.recognized:
        return CM_CANDIDATE
    if j_rec.recognized and not tau_rec.recognized:
        return TRANSCENDENTAL_CANDIDATE
    return UNDETERMINED


def classify_point(ctx_: EvalContext, tau, bounds: ClassifierBounds = ClassifierBounds(),
                   j_value=None) -> PointClassification:
    """Both tau and J(tau) recognized gives CM-candidate.

    ``j_value`` may be passed when J(tau) is known exactly (elliptic points,
    roots of an exact certificate); otherwise it is evaluated.
    """
    with ctx.workprec(ctx_.prec):
        tau = to_acb(tau)
    notes = []
    try:
        if j_value is None:
            j_value = eval_J(ctx_, tau).value
            notes.append("J evaluated from the series")
        else:
            notes.append("J value supplied")
    except PrecisionError as exc:
        return PointClassification(tau, None, None, None, UNDETERMINED, f"evaluation failed: {exc}")
    recs = []
    for z, what in ((tau, "tau"), (j_value, "J")):
        try:
            recs.append(recognize_algebraic(z, bounds.max_degree, bounds.max_height, bounds.digits))
        except InsufficientPrecision as exc:
            recs.append(None)
            notes.append(f"{what}: {exc}")
    verdict = combine_verdict(*recs)
    if verdict == TRANSCENDENTAL_CANDIDATE:
        notes.append("non-recognition at finite bounds is evidence, not proof")
    with ctx.workprec(ctx_.prec):
        jv = to_acb(j_value) if isinstance(j_value, (int, fmpq)) else j_value
    return PointClassification(tau, jv, recs[0], recs[1], verdict, "; ".join(notes))
