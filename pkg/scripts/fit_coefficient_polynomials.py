"""Fit c_k as exact polynomials in s = 1/q^2, t = 1/p^2 and check held-out signatures.

    python scripts/fit_coefficient_polynomials.py --max-k 5 --structure full
"""

import argparse
import json

from triangle_forms.errors import TriangleFormsError
from triangle_forms.groups import INF, make_signature
from triangle_forms.structure import STRUCTURES, coefficient_value, fit_coefficient

FIT = [(2, 3), (2, 4), (2, 5), (2, 7), (3, 3), (3, 4), (3, 5), (4, 5), (2, INF), (3, INF), (INF, INF), (5, 7)]
HOLD = [(4, 7), (5, 6), (6, INF), (7, 11)]


def fmt_poly(mono):
    parts = []
    for (a, b), c in mono.items():
        term = "*".join(x for x in (f"s^{a}" if a > 1 else "s" if a else "",
                                    f"t^{b}" if b > 1 else "t" if b else "") if x)
        parts.append(f"({c})" + (f"*{term}" if term else ""))
    return " + ".join(parts) or "0"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-k", type=int, default=5)
    ap.add_argument("--structure", choices=STRUCTURES, default="full")
    ap.add_argument("--json", action="store_true", help="print the monomials as JSON")
    args = ap.parse_args()

    fit_sigs = [make_signature(*pq) for pq in FIT]
    out = {}
    for k in range(args.max_k + 1):
        try:
            fit = fit_coefficient(k, fit_sigs, args.structure)
        except TriangleFormsError as exc:
            print(f"c_{k}: {exc}")
            continue
        ok = all(fit.predict(make_signature(*pq)) == coefficient_value(make_signature(*pq), k) for pq in HOLD)
        mono = fit.monomials()
        out[k] = {f"{a},{b}": str(c) for (a, b), c in mono.items()}
        if not args.json:
            print(f"c_{k} [{fit.basis.unknowns} unknowns, held-out {'exact' if ok else 'MISMATCH'}]")
            print(f"    {fmt_poly(mono)}")
    if args.json:
        print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
