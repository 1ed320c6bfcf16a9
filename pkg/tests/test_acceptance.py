"""Acceptance criteria, one test each, with a PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v``; the summary lines are
printed even when output capture is on.  Every test clears the expansion
and context caches first so that the runtime limits are measured cold.
"""

import random
import time
from fractions import Fraction

import pytest
from flint import acb, ctx, fmpq, fmpz_poly

from triangle_forms import hauptmodul, numeric
from triangle_forms.certificate import PipelineConfig, AutomorphicFormInput, certify, theorem1_pipeline
from triangle_forms.classify import CM_CANDIDATE, TRANSCENDENTAL_CANDIDATE, ClassifierBounds, classify_point
from triangle_forms.discriminant import delta_expansion
from triangle_forms.errors import TriangleFormsError
from triangle_forms.groups import INF, derive_constants, is_arithmetic, iter_signatures, make_signature
from triangle_forms.numeric import compute_alpha3, eval_J, locate_zero, make_context
from triangle_forms.series import TruncatedSeries
from triangle_forms.structure import coefficient_value, fit_coefficient

from formgen import product_form, q_power, random_q
from oracles import J_OF_2I, delta_23, e4_qtilde, hauptmodul_23


@pytest.fixture(autouse=True)
def cold_caches():
    hauptmodul.clear_cache()
    numeric.compute_alpha3.cache_clear()
    numeric.make_context.cache_clear()
    yield


@pytest.fixture
def report(capsys):
    def emit(number, title, failures, elapsed, limit, tolerance):
        ok = not failures and elapsed < limit
        status = "PASS" if ok else "FAIL"
        line = f"[{status}] criterion {number}: {title} | tolerance {tolerance} | {elapsed:.2f} s (limit {limit} s)"
        with capsys.disabled():
            print("\n" + line)
            for f in failures:
                print(f"         - {f}")
            if elapsed >= limit:
                print("         - runtime limit exceeded")
        assert ok, "; ".join(failures) or "runtime limit exceeded"
    return emit


def _q(x: Fraction) -> fmpq:
    return fmpq(x.numerator, x.denominator)


def _abs(z) -> float:
    return float(abs(z).upper())


def test_criterion_1_hauptmodul_oracle(report):
    t0 = time.perf_counter()
    exp = hauptmodul.hauptmodul_expansion(make_signature(2, 3), 21)
    oracle = hauptmodul_23(23)
    failures = [f"c_{k} = {exp.coefficient(k)} != {oracle[k + 1]}"
                for k in range(0, 21) if exp.coefficient(k) != _q(oracle[k + 1])]
    report(1, "(2,3,oo) c_0..c_20 equal classical j/1728 coefficients", failures,
           time.perf_counter() - t0, 10, "exact")


def test_criterion_2_discriminant_oracle(report):
    t0 = time.perf_counter()
    failures = []
    d = delta_expansion(make_signature(2, 3), 21).series
    oracle = delta_23(20)
    failures += [f"(2,3) coefficient {k} differs" for k in range(1, 21) if d[k] != _q(oracle[k - 1])]
    count = 0
    for sig in iter_signatures(12):
        nd = derive_constants(sig, 64).n_delta
        s = delta_expansion(sig, nd + 2).series
        count += 1
        if s.valuation != nd or s.leading() != 1:
            failures.append(f"{sig}: leading term {s.leading()} w^{s.valuation}, expected w^{nd}")
    assert count == 77
    report(2, f"Delta_12 equals the eta product through 20; leading term w^n_Delta for {count} signatures",
           failures, time.perf_counter() - t0, 60, "exact")


def test_criterion_3_normalization(report):
    t0 = time.perf_counter()
    failures = []
    for pq in [(2, 3), (2, 5), (3, 4), (INF, INF)]:
        sig = make_signature(*pq)
        try:
            c = make_context(sig, 120)
            z1, z2 = c.constants.zeta1, c.constants.zeta2
            e1 = _abs(eval_J(c, z1).value - 1)
            e2 = _abs(eval_J(c, z2).value)
            if not (e1 < 1e-30 and e2 < 1e-30):
                failures.append(f"{pq}: |J(zeta1) - 1| = {e1:.3g}, |J(zeta2)| = {e2:.3g}")
        except TriangleFormsError as exc:
            failures.append(f"{pq}: {type(exc).__name__}: {exc}")
    report(3, "J(zeta1) = 1 and J(zeta2) = 0 at 120 digits", failures,
           time.perf_counter() - t0, 30, "1e-30")


def test_criterion_4_alpha3(report):
    t0 = time.perf_counter()
    failures = []
    a = compute_alpha3(make_signature(2, 3), 40)
    with ctx.workprec(400):
        err = _abs(a.value - 1728)
    if not err < 1e-25:
        failures.append(f"(2,3): |alpha3 - 1728| = {err:.3g}")
    for pq in [(2, 5), (2, 7)]:
        sig = make_signature(*pq)
        lo = compute_alpha3(sig, 40)
        hi = compute_alpha3(sig, 40 + 39, lo.order + 40)  # +128 bits
        with ctx.workprec(hi.prec):
            gap = _abs(lo.value.mid() - hi.value.mid())
        if not gap <= lo.error + hi.error:
            failures.append(f"{pq}: escalation moved alpha3 by {gap:.3g} > {lo.error + hi.error:.3g}")
    report(4, "alpha3(2,3) = 1728; (2,5), (2,7) stable under (N+40, prec+128)", failures,
           time.perf_counter() - t0, 30, "1e-25 / reported bounds")


def test_criterion_5_e4_pipeline(report):
    t0 = time.perf_counter()
    failures = []
    sig = make_signature(2, 3)
    series = TruncatedSeries.from_coefficients([_q(x) for x in e4_qtilde(40)], 0)
    res = theorem1_pipeline(AutomorphicFormInput(sig, 4, series), PipelineConfig(digits=120))
    if list(res.certificate.coefficients) != [0, 0, 0, 0, 1]:
        failures.append(f"certificate {res.certificate.coefficients}")
    for z in res.zeros:
        with ctx.workprec(450):
            d = _abs(z.location.tau - acb.exp_pi_i(acb(1) / 3))
        if not d < 1e-20:
            failures.append(f"zero at distance {d:.3g} from exp(pi i/3)")
        if z.classification.verdict != CM_CANDIDATE:
            failures.append(f"zero classified {z.classification.verdict}")
    if len(res.zeros) != 1:
        failures.append(f"{len(res.zeros)} distinct zeros")
    report(5, "E4 gives P = x^4, zero at exp(pi i/3), CM-candidate", failures,
           time.perf_counter() - t0, 30, "exact / 1e-20")


def test_criterion_6_degree_formula(report):
    t0 = time.perf_counter()
    failures = []
    sigs = [(2, 3), (2, 4), (3, 3), (2, 5), (2, INF), (3, INF), (INF, INF), (4, 4), (3, 4)]
    rng = random.Random(20261015)
    used = set()
    for i in range(50):
        pq = sigs[i % len(sigs)]
        sig = make_signature(*pq)
        const = derive_constants(sig, 64)
        m = rng.randint(1, 2)
        deg_q = rng.randint(0, min(m * const.n_delta, 3 if const.L <= 6 else 1))
        Q = random_q(rng, deg_q)
        f = product_form(sig, m, Q)
        try:
            cert = certify(f)
        except TriangleFormsError as exc:
            failures.append(f"{pq}, m={m}, Q={Q}: {exc}")
            continue
        used.add(pq)
        want = f.weight * const.n_delta - 2 * const.L * f.valuation
        if cert.degree != want:
            failures.append(f"{pq}: degree {cert.degree} != {want}")
        if list(cert.coefficients) != q_power(Q, 2 * const.L):
            failures.append(f"{pq}: certificate is not Q^(2L)")
        if cert.residual_order < cert.degree + 10:
            failures.append(f"{pq}: residual verified only through {cert.residual_order}")
    if len(used) < 5:
        failures.append(f"only {len(used)} signatures exercised")
    report(6, f"deg P = k n_Delta - 2L v for 50 forms Delta^m Q(J) over {len(used)} signatures",
           failures, time.perf_counter() - t0, 300, "exact")


def test_criterion_7_classifier(report):
    t0 = time.perf_counter()
    failures = []
    bounds = ClassifierBounds(8, 10**6, 120)
    c23 = make_context(make_signature(2, 3), 120)
    cases = [("i", [1, 0, 1], fmpq(1)), ("2i", [4, 0, 1], fmpq(J_OF_2I, 1728)),
             ("exp(pi*I/3)", [1, -1, 1], fmpq(0))]
    for tau, poly, J in cases:
        pc = classify_point(c23, tau, bounds)
        if pc.verdict != CM_CANDIDATE:
            failures.append(f"{tau}: {pc.verdict}")
            continue
        if pc.tau_recognition.polynomial != fmpz_poly(poly):
            failures.append(f"{tau}: tau polynomial {pc.tau_recognition.polynomial}")
        if pc.j_recognition.polynomial != fmpz_poly([-J.p, J.q]):
            failures.append(f"{tau}: J polynomial {pc.j_recognition.polynomial}")
    c25 = make_context(make_signature(2, 5), 120)
    loc = locate_zero(c25, fmpq(2))
    pc = classify_point(c25, loc.tau, bounds, j_value=fmpq(2))
    if pc.verdict != TRANSCENDENTAL_CANDIDATE or pc.tau_recognition.recognized:
        failures.append(f"(2,5) J^-1(2): {pc.verdict}")
    if pc.to_json()["heuristic"] is not True:
        failures.append("verdict not labeled heuristic")
    report(7, "i, 2i, exp(pi i/3) CM-candidates; (2,5) J^-1(2) not recognized (heuristic)",
           failures, time.perf_counter() - t0, 120, "D=8, H=1e6, 120 digits")


FIT = [(2, 3), (2, 4), (2, 5), (2, 7), (3, 3), (3, 4), (3, 5), (4, 5), (2, INF), (3, INF), (INF, INF), (5, 7)]
HOLD = [(4, 7), (5, 6), (6, INF), (7, 11)]


def test_criterion_8_signature_independence(report):
    t0 = time.perf_counter()
    failures = []
    fit_sigs = [make_signature(*pq) for pq in FIT]
    for k in range(6):
        try:
            fit = fit_coefficient(k, fit_sigs)
        except TriangleFormsError as exc:
            failures.append(f"c_{k}: {exc}")
            continue
        for pq in HOLD:
            sig = make_signature(*pq)
            if fit.predict(sig) != coefficient_value(sig, k):
                failures.append(f"c_{k} mispredicted at {pq}")
    report(8, "c_0..c_5 fitted on 12 signatures predict 4 held-out exactly", failures,
           time.perf_counter() - t0, 120, "exact")


def test_criterion_9_arithmetic(report):
    t0 = time.perf_counter()
    expected = {(2, 3), (2, 4), (2, 6), (2, INF), (3, 3), (3, INF), (4, 4), (6, 6), (INF, INF)}
    failures = []
    for sig in iter_signatures(30):
        if is_arithmetic(sig) != ((sig.p, sig.q) in expected):
            failures.append(f"{sig}: is_arithmetic = {is_arithmetic(sig)}")
    report(9, "exactly nine arithmetic signatures among p, q <= 30 or oo", failures,
           time.perf_counter() - t0, 1, "exact")
