"""Coefficient fields for truncated series.

Two backends: exact rationals (``fmpq``) and complex balls (``acb``) at a
fixed working precision.  Elements are plain flint scalars, so the series
code uses ordinary Python operators on them; the field object supplies
embedding, zero tests, fast truncated products and serialization.
"""

from __future__ import annotations

import contextlib
from fractions import Fraction

from flint import acb, acb_poly, arb, ctx, fmpq, fmpq_poly, fmpz

from .errors import ValidationError


class RationalField:
    name = "rational"
    exact = True

    def __repr__(self) -> str:
        return "RationalField()"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash(self.name)

    def context(self):
        return contextlib.nullcontext()

    def zero(self):
        return fmpq(0)

    def one(self):
        return fmpq(1)

    def embed(self, x):
        if isinstance(x, fmpq):
            return x
        if isinstance(x, (int, fmpz)):
            return fmpq(x)
        if isinstance(x, Fraction):
            return fmpq(x.numerator, x.denominator)
        if isinstance(x, str):
            return parse_rational(x)
        raise TypeError(f"cannot embed {type(x).__name__} exactly")

    def is_zero(self, x) -> bool:
        return x == 0

    def mullow(self, a: list, b: list, n: int) -> list:
        if n <= 0 or not a or not b:
            return [fmpq(0)] * max(n, 0)
        prod = fmpq_poly(a).mul_low(fmpq_poly(b), n)
        out = prod.coeffs()[:n]
        return out + [fmpq(0)] * (n - len(out))

    def poly(self, coeffs: list):
        return fmpq_poly(coeffs)

    def poly_mullow(self, a, b, n: int):
        return a.mul_low(b, n)

    def poly_coeffs(self, a, n: int) -> list:
        out = a.coeffs()[:n]
        return out + [fmpq(0)] * (n - len(out))

    def to_json(self, x) -> str:
        return str(x) if x.q != 1 else str(x.p)

    def from_json(self, s):
        return parse_rational(s)


def parse_rational(s) -> fmpq:
    if isinstance(s, int):
        return fmpq(s)
    s = str(s).strip()
    if "/" in s:
        num, den = s.split("/")
        return fmpq(int(num), int(den))
    try:
        return fmpq(int(s))
    except ValueError:
        fr = Fraction(s)
        return fmpq(fr.numerator, fr.denominator)


class BallField:
    """Complex balls with ``prec`` bits of working precision."""

    name = "complex-ball"
    exact = False

    def __init__(self, prec: int = 400):
        self.prec = int(prec)

    def __repr__(self) -> str:
        return f"BallField(prec={self.prec})"

    def __eq__(self, other) -> bool:
        return isinstance(other, BallField) and other.prec == self.prec

    def __hash__(self) -> int:
        return hash((self.name, self.prec))

    def context(self):
        return ctx.workprec(self.prec)

    def zero(self):
        return acb(0)

    def one(self):
        return acb(1)

    def embed(self, x):
        if isinstance(x, acb):
            return x
        if isinstance(x, Fraction):
            x = fmpq(x.numerator, x.denominator)
        if isinstance(x, str):
            x = parse_rational(x)
        with self.context():
            if isinstance(x, fmpq):
                return acb(arb(x))
            if isinstance(x, complex):
                return acb(x.real, x.imag)
            return acb(x)

    def is_zero(self, x) -> bool:
        return x.contains(0)

    def mullow(self, a: list, b: list, n: int) -> list:
        if n <= 0 or not a or not b:
            return [acb(0)] * max(n, 0)
        with self.context():
            out = (acb_poly(a[:n]) * acb_poly(b[:n])).coeffs()[:n]
        return out + [acb(0)] * (n - len(out))

    def poly(self, coeffs: list):
        with self.context():
            return acb_poly(coeffs)

    def poly_mullow(self, a, b, n: int):
        with self.context():
            return (a.truncate(n) * b.truncate(n)).truncate(n)

    def poly_coeffs(self, a, n: int) -> list:
        out = a.coeffs()[:n]
        return out + [acb(0)] * (n - len(out))

    def to_json(self, x) -> dict:
        digits = max(1, int(self.prec * 0.30103))
        re, im = x.real, x.imag
        # the decimal midpoints are rounded; widen the radius to cover it
        conv = float(max(abs(re.mid()).upper(), abs(im.mid()).upper())) * 10.0 ** (1 - digits)
        return {
            "re": re.mid().str(digits, radius=False),
            "im": im.mid().str(digits, radius=False),
            "rad": float(max(re.rad(), im.rad())) + conv,
            "prec_bits": self.prec,
        }

    def from_json(self, d):
        if not isinstance(d, dict):
            return self.embed(parse_rational(d))
        with ctx.workprec(self.prec):
            rad = float(d.get("rad", 0.0))
            re = arb(d["re"]) + arb(0, rad) if rad else arb(d["re"])
            im = arb(d["im"]) + arb(0, rad) if rad else arb(d["im"])
            return acb(re, im)


RATIONAL = RationalField()


def field_from_name(name: str, prec: int = 400):
    if name == "rational":
        return RATIONAL
    if name == "complex-ball":
        return BallField(prec)
    raise ValidationError(f"unknown coefficient field {name!r}")
