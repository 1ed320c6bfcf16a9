"""Table of alpha3 (modulus and phase) for a range of signatures.

    python scripts/alpha3_table.py --max-order 7 --digits 30 --csv alpha3.csv
"""

import argparse
import csv
import math
import sys
import time

from flint import ctx

from triangle_forms.errors import TriangleFormsError
from triangle_forms.groups import iter_signatures
from triangle_forms.numeric import compute_alpha3


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-order", type=int, default=7, help="largest finite p, q")
    ap.add_argument("--digits", type=int, default=30)
    ap.add_argument("--csv", help="write the table here instead of stdout")
    args = ap.parse_args()

    rows = []
    for sig in iter_signatures(args.max_order):
        t0 = time.perf_counter()
        try:
            a = compute_alpha3(sig, args.digits)
        except TriangleFormsError as exc:
            print(f"{sig}: {exc}", file=sys.stderr)
            continue
        with ctx.workprec(a.prec):
            mod = abs(a.value)
            phase = float(a.value.arg()) / math.pi
        rows.append([str(sig.p), str(sig.q), mod.mid().str(20, radius=False), f"{phase:.12f}",
                     f"{a.error:.3e}", a.order, f"{time.perf_counter() - t0:.2f}"])
    header = ["p", "q", "abs_alpha3", "arg_over_pi", "error", "order", "seconds"]
    fh = open(args.csv, "w", newline="") if args.csv else sys.stdout
    w = csv.writer(fh)
    w.writerow(header)
    w.writerows(rows)
    if args.csv:
        fh.close()


if __name__ == "__main__":
    main()
