"""Truncated Laurent series in one variable.

A series is ``sum_{k >= valuation} c_k x^k + O(x^order)``: coefficients
from the valuation up to ``order - 1`` are known, everything at or beyond
``order`` is unknown (not zero).  Every operation computes the largest
order its result is provably correct through; nothing assumes a global
truncation length.

The zero series with order N is stored as ``valuation == order == N`` and
an empty coefficient tuple.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BadValuation, DivisionByZeroSeries, InsufficientOrder, ValidationError
from .fields import RATIONAL, field_from_name


@dataclass(frozen=True, eq=True)
class TruncatedSeries:
    field: object
    valuation: int
    coeffs: tuple
    order: int

    def __post_init__(self):
        if len(self.coeffs) != self.order - self.valuation:
            raise ValueError("coefficient count must equal order - valuation")

    # -- construction -------------------------------------------------
    @classmethod
    def from_coefficients(cls, coeffs: Iterable, valuation: int = 0, order: int | None = None,
                          field=RATIONAL) -> "TruncatedSeries":
        """Build a series from coefficients of x^valuation, x^(valuation+1), ...

        ``order`` defaults to valuation + len(coeffs); extra coefficients
        at or beyond ``order`` are dropped.
        """
        cs = [field.embed(c) for c in coeffs]
        if order is None:
            order = valuation + len(cs)
        n = max(order - valuation, 0)
        cs = cs[:n] + [field.zero()] * (n - len(cs))
        return _normalized(field, valuation, cs, order)

    @classmethod
    def zero(cls, order: int, field=RATIONAL) -> "TruncatedSeries":
        return cls(field, order, (), order)

    @classmethod
    def monomial(cls, coeff, exponent: int, order: int, field=RATIONAL) -> "TruncatedSeries":
        return cls.from_coefficients([coeff], exponent, order, field)

    # -- inspection ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def precision(self) -> int:
        """Number of known coefficients from the valuation on."""
        return self.order - self.valuation

    def leading(self):
        if self.is_zero():
            raise DivisionByZeroSeries("zero series has no leading coefficient")
        return self.coeffs[0]

    def __getitem__(self, k: int):
        if k >= self.order:
            raise InsufficientOrder(f"coefficient of x^{k} is beyond the order {self.order}")
        if k < self.valuation:
            return self.field.zero()
        return self.coeffs[k - self.valuation]

    def coefficient_list(self, start: int, stop: int) -> list:
        return [self[k] for k in range(start, stop)]

    def truncate(self, order: int) -> "TruncatedSeries":
        order = min(order, self.order)
        if order <= self.valuation:
            return TruncatedSeries.zero(order, self.field)
        return TruncatedSeries(self.field, self.valuation, self.coeffs[: order - self.valuation], order)

    def to_field(self, field) -> "TruncatedSeries":
        if field == self.field:
            return self
        return TruncatedSeries.from_coefficients(self.coeffs, self.valuation, self.order, field)

    def __repr__(self) -> str:
        terms = [f"({c})*x^{self.valuation + i}" for i, c in enumerate(self.coeffs[:6]) if not self.field.is_zero(c)]
        tail = " + ..." if len(self.coeffs) > 6 else ""
        body = " + ".join(terms) or "0"
        return f"<{body}{tail} + O(x^{self.order})>"

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.add_scalar(other)
        return series_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.field, self.valuation, tuple(-c for c in self.coeffs), self.order)

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.add_scalar(-self.field.embed(other))
        return series_add(self, -other)

    def __rsub__(self, other):
        return (-self).add_scalar(other)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        return series_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, TruncatedSeries):
            c = self.field.embed(other)
            if self.field.is_zero(c):
                raise ZeroDivisionError("division of a series by zero")
            return self.scale(self.field.one() / c)
        return series_mul(self, series_inverse(other))

    def __pow__(self, m: int):
        return series_pow(self, m)

    def scale(self, c) -> "TruncatedSeries":
        c = self.field.embed(c)
        with self.field.context():
            cs = [c * a for a in self.coeffs]
        return _normalized(self.field, self.valuation, cs, self.order)

    def add_scalar(self, c) -> "TruncatedSeries":
        """Add an exactly known constant; the order is unchanged."""
        c = self.field.embed(c)
        if self.order <= 0:
            raise InsufficientOrder("constant term lies beyond the series order")
        lo = min(self.valuation, 0)
        cs = self.coefficient_list(lo, self.order)
        with self.field.context():
            cs[-lo] = cs[-lo] + c
        return _normalized(self.field, lo, cs, self.order)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by x^k."""
        return TruncatedSeries(self.field, self.valuation + k, self.coeffs, self.order + k)

    def evaluate(self, x):
        """Horner evaluation of the known part at a field element ``x``."""
        with self.field.context():
            acc = self.field.zero()
            for c in reversed(self.coeffs):
                acc = acc * x + c
            if self.valuation:
                acc = acc * x ** self.valuation
        return acc

    # -- serialization -----------------------------------------------
    def to_json(self, variable: str = "qtilde3") -> dict:
        return {
            "variable": variable,
            "valuation": self.valuation,
            "order": self.order,
            "field": self.field.name,
            "coefficients": [self.field.to_json(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict, prec: int = 400) -> "TruncatedSeries":
        field = field_from_name(data.get("field", "rational"), _json_prec(data, prec))
        coeffs = [field.from_json(c) for c in data["coefficients"]]
        return cls.from_coefficients(coeffs, int(data["valuation"]), int(data["order"]), field)


def _json_prec(data: dict, default: int) -> int:
    for c in data.get("coefficients", []):
        if isinstance(c, dict) and "prec_bits" in c:
            return int(c["prec_bits"])
    return default


def _normalized(field, valuation: int, cs: list, order: int) -> TruncatedSeries:
    i = 0
    while i < len(cs) and field.is_zero(cs[i]):
        i += 1
    if i == len(cs):
        return TruncatedSeries.zero(order, field)
    return TruncatedSeries(field, valuation + i, tuple(cs[i:]), order)


def _check_fields(a: TruncatedSeries, b: TruncatedSeries):
    if a.field != b.field:
        raise ValidationError(f"field mismatch: {a.field!r} vs {b.field!r}")
    return a.field


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    field = _check_fields(a, b)
    order = min(a.order, b.order)
    lo = min(a.valuation, b.valuation, order)
    xs, ys = a.coefficient_list(lo, order), b.coefficient_list(lo, order)
    with field.context():
        cs = [x + y for x, y in zip(xs, ys)]
    return _normalized(field, lo, cs, order)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    field = _check_fields(a, b)
    order = min(a.valuation + b.order, b.valuation + a.order)
    if a.is_zero() or b.is_zero():
        return TruncatedSeries.zero(order, field)
    v = a.valuation + b.valuation
    cs = field.mullow(list(a.coeffs), list(b.coeffs), order - v)
    return _normalized(field, v, cs, order)


def _inverse_unit(field, cs: Sequence, n: int) -> list:
    """First n coefficients of 1/f for a power series f with f[0] invertible."""
    with field.context():
        inv = [field.one() / cs[0]]
    m = 1
    while m < n:
        m2 = min(2 * m, n)
        # Newton step: g <- g + g(1 - f g)
        fg = field.mullow(list(cs[:m2]), inv, m2)
        with field.context():
            e = [-c for c in fg]
            e[0] = e[0] + 1
        corr = field.mullow(inv, e, m2)
        with field.context():
            inv = [(inv[i] if i < len(inv) else field.zero()) + corr[i] for i in range(m2)]
        m = m2
    return inv[:n]


def series_inverse(a: TruncatedSeries) -> TruncatedSeries:
    if a.is_zero():
        raise DivisionByZeroSeries("cannot invert the zero series")
    n = a.precision
    inv = _inverse_unit(a.field, a.coeffs, n)
    return _normalized(a.field, -a.valuation, inv, n - a.valuation)


def series_pow(a: TruncatedSeries, m: int, method: str = "binary") -> TruncatedSeries:
    """a^m for any integer m; negative powers go through the inverse.

    The result has valuation m*v(a) and the same relative precision as a.
    """
    if m < 0:
        return series_pow(series_inverse(a), -m, method)
    if a.is_zero():
        if m == 0:
            raise DivisionByZeroSeries("0^0 of a truncated zero series is undefined")
        return TruncatedSeries.zero(m * a.order, a.field)
    if m == 0:
        return TruncatedSeries.from_coefficients([a.field.one()], 0, a.precision, a.field)
    if method == "iterated":
        out = a
        for _ in range(m - 1):
            out = series_mul(out, a)
        return out
    result, base = None, a
    while m:
        if m & 1:
            result = base if result is None else series_mul(result, base)
        m >>= 1
        if m:
            base = series_mul(base, base)
    return result


def theta_derivative(a: TruncatedSeries) -> TruncatedSeries:
    """x d/dx: the coefficient of x^k becomes k * c_k."""
    with a.field.context():
        cs = [(a.valuation + i) * c for i, c in enumerate(a.coeffs)]
    return _normalized(a.field, a.valuation, cs, a.order)


def derivative(a: TruncatedSeries) -> TruncatedSeries:
    """d/dx."""
    return theta_derivative(a).shift(-1)


def _power_part(a: TruncatedSeries, start: int) -> list:
    """Coefficients c_0..c_{order-1} of a power series (valuation >= start)."""
    if a.valuation < start:
        raise BadValuation(f"expected valuation >= {start}, got {a.valuation}")
    return a.coefficient_list(0, a.order)


def series_exp(a: TruncatedSeries) -> TruncatedSeries:
    """exp(a) for a with valuation >= 1; order is preserved."""
    field = a.field
    cs = _power_part(a, 1)
    n = a.order
    if n <= 0:
        return TruncatedSeries.zero(n, field)
    da = [k * c for k, c in enumerate(cs)]  # k a_k
    e = [field.one()]
    with field.context():
        for k in range(1, n):
            s = field.zero()
            for j in range(1, k + 1):
                s = s + da[j] * e[k - j]
            e.append(s / k)
    return _normalized(field, 0, e, n)


def series_log(a: TruncatedSeries) -> TruncatedSeries:
    """log(a) for a = 1 + O(x); order is preserved."""
    field = a.field
    cs = _power_part(a, 0)
    if a.order <= 0 or a.valuation != 0:
        raise BadValuation("log needs a series of the form 1 + O(x)")
    unit = cs[0] == 1 if field.exact else (cs[0] - 1).contains(0)
    if not unit:
        raise BadValuation("log needs a series of the form 1 + O(x)")
    n = a.order
    # log(a)' = a'/a
    da = [k * c for k, c in enumerate(cs)]
    quotient = field.mullow(da[1:] if n > 1 else [], _inverse_unit(field, cs, n), n - 1)
    with field.context():
        out = [field.zero()] + [quotient[k - 1] / k for k in range(1, n)]
    return _normalized(field, 0, out, n)


def series_compose(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """a(b(x)) for b with valuation >= 1.

    a may be a Laurent series; its negative part is handled through
    b^(-1).  Precision: a known mod y^(N_a) gives a(b) mod x^(N_a * v(b));
    b known mod x^(N_b) perturbs a(b) at x^(N_b + (v(a) - 1) v(b)).
    """
    field = _check_fields(a, b)
    if b.is_zero() or b.valuation < 1:
        raise BadValuation("inner series must have valuation >= 1")
    vb = b.valuation
    if a.is_zero():
        return TruncatedSeries.zero(a.order * vb, field)
    va = a.valuation
    # a' has valuation >= va - 1, or >= 0 when a is a power series with va = 0
    order = min(a.order * vb, b.order + (va - 1 if va else 0) * vb)
    power_part = TruncatedSeries(field, 0, a.coeffs, a.order - va)
    rel = order - va * vb
    inner = b.truncate(rel)
    acc = _compose_bsgs(field, list(power_part.coeffs), inner.coefficient_list(0, rel), rel)
    core = _normalized(field, 0, acc, rel)
    if va == 0:
        return core
    return series_mul(core, series_pow(b, va)).truncate(order)


def _compose_bsgs(field, cs: list, bl: list, n: int) -> list:
    """sum_k cs[k] b^k mod x^n, baby-step giant-step (Paterson-Stockmeyer)."""
    if n <= 0:
        return []
    m = len(cs)
    k = max(1, math.isqrt(max(m - 1, 1)) + 1)
    b = field.poly(bl[:n])
    baby = [field.poly([field.one()]), b]
    for _ in range(2, k):
        baby.append(field.poly_mullow(baby[-1], b, n))
    giant = field.poly_mullow(baby[-1], b, n)
    acc = None
    with field.context():
        for start in reversed(range(0, m, k)):
            block = field.poly([])
            for j, c in enumerate(cs[start:start + k]):
                if not (field.exact and c == 0):
                    block += c * baby[j]
            acc = block if acc is None else field.poly_mullow(acc, giant, n) + block
    return field.poly_coeffs(acc, n)


def series_revert(a: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse b with a(b(w)) = w, via Newton iteration.

    Requires valuation 1 and an invertible leading coefficient.  Each
    Newton step b <- b - (a(b) - w) / a'(b) doubles the number of correct
    coefficients.
    """
    if a.is_zero() or a.valuation != 1:
        raise BadValuation("reversion needs a series of valuation exactly 1")
    field = a.field
    n = a.order
    da = derivative(a)
    with field.context():
        b = TruncatedSeries.from_coefficients([field.one() / a.leading()], 1, 2, field)
    m = 2
    while m < n:
        m = min(2 * m, n)
        bb = TruncatedSeries(field, b.valuation, b.coeffs + (field.zero(),) * (m - b.order), m)
        residual = series_compose(a.truncate(m), bb) - TruncatedSeries.monomial(1, 1, m, field)
        slope = series_compose(da.truncate(m - 1), bb)
        step = series_mul(residual, series_inverse(slope))
        b = (bb - step).truncate(m)
        if b.order < m:
            b = TruncatedSeries(field, b.valuation, b.coeffs + (field.zero(),) * (m - b.order), m)
    return b.truncate(n)
