"""Certificates and zero classifications for forms Delta^m Q(J) with random Q.

    python scripts/zero_survey.py --p 2 --q 5 --count 5 --csv zeros.csv --svg zeros.svg
"""

import argparse
import random

from flint import fmpq, fmpq_poly

from triangle_forms import io
from triangle_forms.certificate import AutomorphicFormInput, PipelineConfig, theorem1_pipeline
from triangle_forms.classify import ClassifierBounds
from triangle_forms.discriminant import delta_expansion
from triangle_forms.groups import derive_constants, make_signature, parse_order
from triangle_forms.hauptmodul import hauptmodul_expansion


def build_form(sig, roots, margin=10):
    """Delta_2L * prod (J - r) for integer roots r, with enough terms to certify."""
    const = derive_constants(sig, 64)
    n = len(roots)
    N = 2 * (2 * const.L * n) + margin + const.n_delta + 2
    J = hauptmodul_expansion(sig, N + n + 1).series
    f = delta_expansion(sig, N + n + const.n_delta + 2).series
    for r in roots:
        f = f * J.add_scalar(-r)
    return AutomorphicFormInput(sig, 2 * const.L, f.truncate(N))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=parse_order, default=2)
    ap.add_argument("--q", type=parse_order, default=5)
    ap.add_argument("--count", type=int, default=3, help="number of random forms")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--digits", type=int, default=120)
    ap.add_argument("--csv")
    ap.add_argument("--svg")
    args = ap.parse_args()

    sig = make_signature(args.p, args.q)
    const = derive_constants(sig, 64)
    rng = random.Random(args.seed)
    rows = []
    for _ in range(args.count):
        n = rng.randint(1, max(1, min(const.n_delta, 2)))
        roots = [fmpq(rng.choice([-5, -3, -2, 2, 3, 7, 12])) for _ in range(n)]
        f = build_form(sig, roots)
        res = theorem1_pipeline(f, PipelineConfig(digits=args.digits, bounds=ClassifierBounds(digits=args.digits)))
        print(f"P = {fmpq_poly(list(res.certificate.coefficients)).factor()}  (degree {res.certificate.degree})")
        for z in res.zeros:
            verdict = z.classification.verdict if z.classification else f"unlocated: {z.error}"
            tau = z.location.tau if z.location else None
            print(f"  root {z.exact_root}  x{z.multiplicity}  tau = {tau}  -> {verdict}")
            if tau is not None:
                rows.append({"re_tau": tau.real.mid().str(20, radius=False),
                             "im_tau": tau.imag.mid().str(20, radius=False),
                             "root_re": str(z.exact_root), "root_im": "0",
                             "multiplicity": z.multiplicity, "verdict": verdict})
    if args.csv:
        io.write_text(args.csv, io.zeros_csv(rows))
    if args.svg:
        io.write_text(args.svg, io.zeros_svg(rows, float(const.h3)))


if __name__ == "__main__":
    main()
