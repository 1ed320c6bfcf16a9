"""Write example form files for the certify / eval / equiv commands.

    python scripts/make_forms.py --out data/forms --terms 40
"""

import argparse
import json
from fractions import Fraction
from pathlib import Path

from triangle_forms.certificate import AutomorphicFormInput, delta_form
from triangle_forms.groups import make_signature
from triangle_forms.hauptmodul import hauptmodul_expansion
from triangle_forms.series import TruncatedSeries


def sigma(k, n):
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


def eisenstein(weight: int, terms: int) -> TruncatedSeries:
    """E4 or E6 for (2,3,oo) in qtilde = 1728 q."""
    c = {4: 240, 6: -504}[weight]
    coeffs = [Fraction(1)] + [Fraction(c * sigma(weight - 1, n), 1728**n) for n in range(1, terms)]
    return TruncatedSeries.from_coefficients(coeffs, 0)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="data/forms")
    ap.add_argument("--terms", type=int, default=40)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    s23 = make_signature(2, 3)
    forms = {
        "e4.json": (AutomorphicFormInput(s23, 4, eisenstein(4, args.terms)), "Eisenstein E4, (2,3,oo)"),
        "e6.json": (AutomorphicFormInput(s23, 6, eisenstein(6, args.terms)), "Eisenstein E6, (2,3,oo)"),
        "delta12.json": (delta_form(s23, args.terms + 1), "Delta_12, (2,3,oo)"),
    }
    s25 = make_signature(2, 5)
    d20 = delta_form(s25, 60)
    J = hauptmodul_expansion(s25, 60).series
    forms["delta20_j_minus_2.json"] = (AutomorphicFormInput(s25, 20, d20.series * (J - 2)),
                                       "Delta_20 (J - 2), (2,5,oo)")
    for name, (form, text) in forms.items():
        doc = form.to_json()
        doc["description"] = text
        (out / name).write_text(json.dumps(doc, indent=1) + "\n", encoding="utf-8")
        print(f"wrote {out / name}")


if __name__ == "__main__":
    main()
