"""Polynomial certificates for automorphic forms and the zero classification.

For a holomorphic form f of even weight k,

    g = f^(2L) / Delta_2L^k

is invariant of weight 0 and holomorphic on the upper half plane (Delta
has no zeros there), with a pole of order d = k n_Delta - 2L v(f) at the
cusp.  Hence g = P(J) for a polynomial P of degree d, found here by
cancelling the principal part of g against powers of J.  Zeros of f are
then the points where J takes the values of the roots of P.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from flint import acb, arb, ctx, fmpq

from .classify import (
    ClassifierBounds,
    PointClassification,
    RecognitionResult,
    classify_point,
    recognize_algebraic,
)
from .discriminant import delta_expansion
from .errors import (
    DegreeMismatch,
    EquivalentToDelta,
    InsufficientOrder,
    InvalidForm,
    NonconstantRemainder,
    PrecisionError,
)
from .fields import RATIONAL
from .groups import Signature, derive_constants
from .hauptmodul import HauptmodulExpansion, hauptmodul_expansion
from .numeric import (
    ZeroLocation,
    ball_error,
    default_digits,
    eval_delta,
    eval_form,
    eval_J,
    locate_zero,
    make_context,
    to_acb,
)
from .roots import Root, ball_polynomial_roots, exact_polynomial_roots
from .series import TruncatedSeries, series_inverse, series_mul, series_pow

DEFAULT_MARGIN = 10


@dataclass(frozen=True)
class AutomorphicFormInput:
    signature: Signature
    weight: int
    series: TruncatedSeries
    holomorphic: bool = True

    def __post_init__(self):
        if self.weight <= 0 or self.weight % 2:
            raise InvalidForm(f"weight must be a positive even integer, got {self.weight}")
        if self.series.is_zero():
            raise InvalidForm("the zero series is not a usable form")
        if self.holomorphic and self.series.valuation < 0:
            raise InvalidForm(f"holomorphic form has negative valuation {self.series.valuation}")

    @property
    def field(self) -> str:
        return self.series.field.name

    @property
    def valuation(self) -> int:
        return self.series.valuation

    def scaled(self, c) -> "AutomorphicFormInput":
        return AutomorphicFormInput(self.signature, self.weight, self.series.scale(c), self.holomorphic)

    def to_json(self) -> dict:
        return {"signature": self.signature.to_json(), "weight": self.weight,
                "series": self.series.to_json()}

    @classmethod
    def from_json(cls, data: dict, prec: int = 400) -> "AutomorphicFormInput":
        return cls(Signature.from_json(data["signature"]), int(data["weight"]),
                   TruncatedSeries.from_json(data["series"], prec))


def delta_form(sig: Signature, order: int) -> AutomorphicFormInput:
    """Delta_2L as a form input, known through w^(order-1)."""
    exp = delta_expansion(sig, order)
    return AutomorphicFormInput(sig, exp.weight, exp.series)


@dataclass(frozen=True)
class PolynomialCertificate:
    coefficients: tuple  # P_0, ..., P_d
    degree: int
    signature: Signature
    weight: Optional[int]
    valuation: Optional[int]
    g_order: int
    j_order: int
    residual_order: int
    field_name: str = "rational"

    @property
    def exact(self) -> bool:
        return self.field_name == "rational"

    def to_json(self) -> dict:
        from .io import acb_to_json, rational_to_json

        conv = rational_to_json if self.exact else acb_to_json
        return {
            "degree": self.degree,
            "coefficients": [conv(c) for c in self.coefficients],
            "field": self.field_name,
            "provenance": {
                "signature": self.signature.to_json(),
                "weight": self.weight,
                "valuation": self.valuation,
                "g_order": self.g_order,
                "j_order": self.j_order,
            },
            "residual_order": self.residual_order,
        }


def pole_reduce(g: TruncatedSeries, J: HauptmodulExpansion, weight: Optional[int] = None,
                valuation: Optional[int] = None) -> PolynomialCertificate:
    """P with g = P(J), by cancelling the principal part of g from the top.

    The residual g - P(J) must vanish through the order of g.
    """
    if g.is_zero():
        raise InsufficientOrder("g is zero through its order; nothing to certify")
    field = g.field
    d = max(-g.valuation, 0)
    if g.order <= 0:
        raise InsufficientOrder(f"g is known only through w^{g.order - 1}; the constant term is missing")
    # J^d has relative precision J.order + 1, so J.order >= g.order + d - 1 keeps g's order
    if J.order < g.order + d - 1:
        raise InsufficientOrder(f"J order {J.order} < {g.order + d - 1} needed to reduce g")
    Js = J.series.truncate(g.order + d - 1).to_field(field)
    powers = [None, Js]
    for _ in range(2, d + 1):
        powers.append(series_mul(powers[-1], Js))
    coeffs = [field.zero()] * (d + 1)
    rem = g
    for m in range(d, 0, -1):
        c = rem[-m]
        coeffs[m] = c
        if not (field.exact and c == 0):
            rem = rem - powers[m].scale(c)
    c0 = rem[0]
    coeffs[0] = c0
    rem = rem.add_scalar(-c0)
    with field.context():
        bad = [k for k in range(min(rem.valuation, rem.order), rem.order)
               if not field.is_zero(rem[k])]
    if bad:
        raise NonconstantRemainder(
            f"g - P(J) has a nonzero coefficient at w^{bad[0]} (residual {rem[bad[0]]})")
    while len(coeffs) > 1 and field.exact and coeffs[-1] == 0:
        coeffs.pop()
    return PolynomialCertificate(tuple(coeffs), len(coeffs) - 1, J.signature, weight, valuation,
                                 g.order, J.order, rem.order, field.name)


@dataclass(frozen=True)
class PipelineConfig:
    margin: int = DEFAULT_MARGIN
    digits: int = field(default_factory=default_digits)
    bounds: ClassifierBounds = ClassifierBounds()
    classify: bool = True


@dataclass(frozen=True)
class ZeroRecord:
    root: acb
    multiplicity: int
    exact_root: Optional[fmpq]
    location: Optional[ZeroLocation]
    classification: Optional[PointClassification]
    error: Optional[str] = None

    def to_json(self) -> dict:
        from .io import acb_to_json, rational_to_json

        return {
            "root": acb_to_json(self.root),
            "exact_root": rational_to_json(self.exact_root) if self.exact_root is not None else None,
            "multiplicity": self.multiplicity,
            "tau": acb_to_json(self.location.tau) if self.location else None,
            "method": self.location.method if self.location else None,
            "classification": self.classification.to_json() if self.classification else None,
            "error": self.error,
        }


@dataclass(frozen=True)
class PipelineResult:
    certificate: PolynomialCertificate
    roots: tuple
    zeros: tuple
    expected_degree: int

    def to_json(self) -> dict:
        return {
            "certificate": self.certificate.to_json(),
            "expected_degree": self.expected_degree,
            "zeros": [z.to_json() for z in self.zeros],
        }


def expected_degree(sig: Signature, weight: int, valuation: int) -> int:
    const = derive_constants(sig, 64)
    return weight * const.n_delta - 2 * const.L * valuation


def form_quotient(f: AutomorphicFormInput, margin: int = DEFAULT_MARGIN) -> tuple[TruncatedSeries, int]:
    """g = f^(2L) / Delta^k and the degree its certificate must have."""
    sig = f.signature
    const = derive_constants(sig, 64)
    L, nd, k, v = const.L, const.n_delta, f.weight, f.valuation
    d = expected_degree(sig, k, v)
    if d < 0:
        raise DegreeMismatch(f"valuation {v} exceeds the cusp bound {k * nd / (2 * L)} for weight {k}")
    # g = w^-d (unit with f's relative precision); order(g) >= d + margin is required
    need = 2 * d + margin
    if f.series.precision < need:
        raise InsufficientOrder(
            f"form known to {f.series.precision} terms, {need} needed for degree {d} with margin {margin}")
    rel = f.series.precision
    delta = delta_expansion(sig, nd + rel).series.to_field(f.series.field)
    g = series_mul(series_pow(f.series, 2 * L), series_pow(series_inverse(delta), k))
    return g, d


def certify(f: AutomorphicFormInput, margin: int = DEFAULT_MARGIN) -> PolynomialCertificate:
    g, d = form_quotient(f, margin)
    J = hauptmodul_expansion(f.signature, max(g.order + d - 1, 2))
    cert = pole_reduce(g, J, f.weight, f.valuation)
    if cert.degree != d:
        raise DegreeMismatch(f"certificate has degree {cert.degree}, expected {d}")
    return cert


def certificate_roots(cert: PolynomialCertificate, digits: int) -> list[Root]:
    if cert.degree == 0:
        return []
    if cert.exact:
        return exact_polynomial_roots(list(cert.coefficients), digits)
    return ball_polynomial_roots(list(cert.coefficients), digits)


def theorem1_pipeline(f: AutomorphicFormInput, config: PipelineConfig = PipelineConfig()) -> PipelineResult:
    cert = certify(f, config.margin)
    roots = certificate_roots(cert, config.digits)
    zeros = []
    ctx_ = make_context(f.signature, config.digits) if roots else None
    for root in roots:
        r = root.exact if root.exact is not None else root.value
        try:
            loc = locate_zero(ctx_, r)
        except PrecisionError as exc:
            zeros.append(ZeroRecord(root.value, root.multiplicity, root.exact, None, None, str(exc)))
            continue
        pc = None
        if config.classify:
            jv = root.exact if root.exact is not None else None
            pc = classify_point(ctx_, loc.tau, config.bounds, j_value=jv)
        zeros.append(ZeroRecord(root.value, root.multiplicity, root.exact, loc, pc))
    zeros.sort(key=lambda z: (float(z.root.real.mid()), float(z.root.imag.mid())))
    return PipelineResult(cert, tuple(roots), tuple(zeros), cert.degree)


# -- equivalence and the algebraic-value test ---------------------------

@dataclass(frozen=True)
class EquivalenceResult:
    equivalent: bool
    lam: Optional[object]
    k1: int
    k2: int
    checked_order: int
    reason: str

    def to_json(self) -> dict:
        from .io import acb_to_json, rational_to_json

        lam = None
        if self.lam is not None:
            lam = rational_to_json(self.lam) if isinstance(self.lam, fmpq) else acb_to_json(self.lam)
        return {"equivalent": self.equivalent, "lambda": lam, "k1": self.k1, "k2": self.k2,
                "checked_order": self.checked_order, "reason": self.reason}


def is_equivalent(f1: AutomorphicFormInput, f2: AutomorphicFormInput) -> EquivalenceResult:
    """f2^k2 = lambda f1^k1 with k1 w1 = k2 w2 minimal, compared term by term.

    lambda is the factor carrying f1's power to f2's, so f1 = D and
    f2 = 5 D give lambda = 5.
    """
    g = math.gcd(f1.weight, f2.weight)
    k1, k2 = f2.weight // g, f1.weight // g
    s1, s2 = f1.series, f2.series
    if s1.field != s2.field:
        # compare in the inexact field
        target = s1.field if not s1.field.exact else s2.field
        s1, s2 = s1.to_field(target), s2.to_field(target)
    a, b = series_pow(s1, k1), series_pow(s2, k2)
    if a.valuation != b.valuation:
        return EquivalenceResult(False, None, k1, k2, min(a.order, b.order),
                                 f"valuations differ: {a.valuation} vs {b.valuation}")
    field = a.field
    with field.context():
        lam = b.leading() / a.leading()
    diff = b - a.scale(lam)
    if diff.order - a.valuation < 2:
        raise InsufficientOrder("fewer than two provable terms to compare")
    with field.context():
        bad = [k for k in range(min(diff.valuation, diff.order), diff.order) if not field.is_zero(diff[k])]
    if bad:
        return EquivalenceResult(False, None, k1, k2, diff.order, f"coefficients differ at w^{bad[0]}")
    return EquivalenceResult(True, lam, k1, k2, diff.order, "all provable terms agree")


@dataclass(frozen=True)
class Theorem2Bounds:
    # (P(J(alpha))) for f = E4, alpha = 2i is (1331/8)^4, of height 1331^4 ~ 3.1e12
    max_degree: int = 4
    max_height: int = 10**13
    digits: int = 160


HYPOTHESIS_NOT_ESTABLISHED = "hypothesis-not-established"
CONSISTENT = "consistent"
CONTRADICTION = "contradiction"


@dataclass(frozen=True)
class Theorem2Report:
    alpha: acb
    value: acb
    value_error: float
    direct_value: Optional[acb]
    alpha_recognition: RecognitionResult
    value_recognition: Optional[RecognitionResult]
    classification: Optional[PointClassification]
    status: str
    note: str

    def to_json(self) -> dict:
        from .io import acb_to_json

        return {
            "alpha": acb_to_json(self.alpha),
            "value": acb_to_json(self.value),
            "value_error": self.value_error,
            "direct_value": acb_to_json(self.direct_value) if self.direct_value is not None else None,
            "alpha_recognition": self.alpha_recognition.to_json(),
            "value_recognition": self.value_recognition.to_json() if self.value_recognition else None,
            "classification": self.classification.to_json() if self.classification else None,
            "status": self.status,
            "heuristic": True,
            "note": self.note,
        }


def theorem2_check(f: AutomorphicFormInput, alpha, bounds: Theorem2Bounds = Theorem2Bounds(),
                   classifier: ClassifierBounds = ClassifierBounds(),
                   margin: int = DEFAULT_MARGIN) -> Theorem2Report:
    """Is alpha algebraic with f^(2L)/Delta^k (alpha) algebraic, and then CM?

    The value is computed as P(J(alpha)) from the certificate; when f's own
    series converges well enough at alpha the direct quotient is reported
    alongside as a cross-check.
    """
    sig = f.signature
    eq = is_equivalent(f, delta_form(sig, f.series.precision + derive_constants(sig, 64).n_delta))
    if eq.equivalent:
        raise EquivalentToDelta("f is equivalent to Delta_2L; the statement excludes this case")
    cert = certify(f, margin)
    ctx_ = make_context(sig, bounds.digits)
    with ctx.workprec(ctx_.prec):
        alpha = to_acb(alpha)
        ev = eval_J(ctx_, alpha)
        coeffs = [acb(arb(c)) if isinstance(c, fmpq) else c for c in cert.coefficients]
        value = acb(0)
        for c in reversed(coeffs):
            value = value * ev.value + c
        try:
            fv = eval_form(ctx_, f.series, alpha)
            dv = eval_delta(ctx_, alpha)
            direct = fv.value ** (2 * derive_constants(sig, 64).L) / dv.value ** f.weight
        except PrecisionError:
            direct = None
    notes = []
    a_rec = recognize_algebraic(alpha, classifier.max_degree, classifier.max_height,
                                min(classifier.digits, bounds.digits))
    if not a_rec.recognized:
        return Theorem2Report(alpha, value, ball_error(value), direct, a_rec, None, None,
                              HYPOTHESIS_NOT_ESTABLISHED, "alpha not recognized as algebraic; no claim")
    v_rec = recognize_algebraic(value, bounds.max_degree, bounds.max_height, bounds.digits)
    if not v_rec.recognized:
        return Theorem2Report(alpha, value, ball_error(value), direct, a_rec, v_rec, None,
                              HYPOTHESIS_NOT_ESTABLISHED, "value not recognized as algebraic; no claim")
    pc = classify_point(ctx_, alpha, classifier)
    if pc.verdict == "CM-candidate":
        status = CONSISTENT
        notes.append("alpha and the value are algebraic and alpha classifies as CM-candidate")
    else:
        status = CONTRADICTION
        notes.append("alpha and the value look algebraic but alpha is not a CM-candidate: "
                     "precision failure or a bug")
    return Theorem2Report(alpha, value, ball_error(value), direct, a_rec, v_rec, pc, status, "; ".join(notes))
