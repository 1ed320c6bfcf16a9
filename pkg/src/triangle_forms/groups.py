"""Signatures (p, q, oo) of cuspidal triangle groups and their constants.

The group is normalized so that its fundamental region contains the
hyperbolic triangle with vertices

    zeta1 = -exp(-pi i / p),   zeta2 = exp(pi i / q),   zeta3 = i*oo,

with angles pi/p, pi/q, 0.  The generators are products of reflections in
the sides of that triangle (left wall Re = -cos(pi/p), unit circle, right
wall Re = cos(pi/q)), which gives exact entries in Z[2cos(pi/p), 2cos(pi/q)]:

    M1 = [[-2cos(pi/p), -1], [1, 0]]      rotation by 2pi/p about zeta1
    M2 = [[0, 1], [-1, 2cos(pi/q)]]       rotation by 2pi/q about zeta2
    M3 = [[1, h3], [0, 1]]                translation by the cusp width

and M1 M2 M3 = 1 holds identically.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterator, Optional, Union

from flint import acb, arb, ctx, fmpq, fmpz_poly

from .errors import NotHyperbolic, OrderViolation, ValidationError


class Infinity(enum.Enum):
    INF = "inf"

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"


INF = Infinity.INF

Order = Union[int, Infinity]


def _rank(x: Order) -> float:
    return math.inf if x is INF else x


def reciprocal(x: Order) -> Fraction:
    """1/x with 1/oo = 0."""
    return Fraction(0) if x is INF else Fraction(1, x)


def ceil_ratio(L: int, x: Order) -> int:
    """ceil(L/x) with L/oo = 0."""
    return 0 if x is INF else -(-L // x)


def parse_order(value) -> Order:
    if value is INF:
        return INF
    if isinstance(value, str):
        v = value.strip().lower()
        if v in ("inf", "oo", "infinity", "∞"):
            return INF
        try:
            value = int(v)
        except ValueError:
            raise ValidationError(f"not an integer or 'inf': {value!r}") from None
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"not an integer or 'inf': {value!r}")
    return value


@dataclass(frozen=True)
class Signature:
    p: Order
    q: Order

    def __str__(self) -> str:
        return f"({self.p},{self.q},inf)"

    def to_json(self) -> dict:
        return {"p": "inf" if self.p is INF else self.p,
                "q": "inf" if self.q is INF else self.q}

    @classmethod
    def from_json(cls, data: dict) -> "Signature":
        return make_signature(data["p"], data["q"])


def make_signature(p, q) -> Signature:
    """Validate 2 <= p <= q <= oo and 1/p + 1/q < 1."""
    p, q = parse_order(p), parse_order(q)
    if _rank(p) < 2 or _rank(q) < 2:
        raise OrderViolation(f"orders must be >= 2, got p={p}, q={q}")
    if _rank(p) > _rank(q):
        raise OrderViolation(f"need p <= q, got p={p}, q={q}")
    if reciprocal(p) + reciprocal(q) >= 1:
        raise NotHyperbolic(f"1/{p} + 1/{q} >= 1")
    return Signature(p, q)


def iter_signatures(bound: int, include_infinity: bool = True) -> Iterator[Signature]:
    """All hyperbolic signatures with finite orders <= bound, plus oo cases."""
    orders: list = list(range(2, bound + 1)) + ([INF] if include_infinity else [])
    for i, p in enumerate(orders):
        for q in orders[i:]:
            try:
                yield make_signature(p, q)
            except NotHyperbolic:
                continue


# Takeuchi's classification of arithmetic triangle groups, restricted to
# signatures with a cusp (J. Math. Soc. Japan 29 (1977)).
ARITHMETIC_SIGNATURES = frozenset(
    Signature(p, q)
    for p, q in [(2, 3), (2, 4), (2, 6), (2, INF), (3, 3), (3, INF), (4, 4), (6, 6), (INF, INF)]
)


def is_arithmetic(sig: Signature) -> bool:
    return sig in ARITHMETIC_SIGNATURES


def digits_to_bits(digits: int) -> int:
    return int(math.ceil(digits * math.log2(10))) + 16


@dataclass(frozen=True)
class TwoCos:
    """The real algebraic number 2cos(pi/n); n = oo gives 2."""

    n: Order

    def minpoly(self) -> fmpz_poly:
        if self.n is INF:
            return fmpz_poly([-2, 1])
        return fmpz_poly.cos_minpoly(2 * self.n)

    def value(self) -> arb:
        if self.n is INF:
            return arb(2)
        return 2 * arb.cos_pi(arb(fmpq(1, self.n)))

    def __str__(self) -> str:
        return "2" if self.n is INF else f"2cos(pi/{self.n})"


@dataclass(frozen=True)
class UnitRoot:
    """exp(pi i * turns) for a rational ``turns``."""

    turns: Fraction

    def value(self) -> acb:
        t = self.turns
        return acb.exp_pi_i(acb(fmpq(t.numerator, t.denominator)))

    def minpoly(self) -> fmpz_poly:
        # exp(pi i a/b) is a primitive root of unity of order 2b/gcd(a, 2b)
        t = self.turns
        order = 2 * t.denominator // math.gcd(t.numerator, 2 * t.denominator)
        return fmpz_poly.cyclotomic(order)

    def __str__(self) -> str:
        return f"exp(pi*i*{self.turns})"


Matrix = tuple  # ((a, b), (c, d)) with arb entries


def mobius(m: Matrix, tau: acb) -> acb:
    (a, b), (c, d) = m
    return (a * tau + b) / (c * tau + d)


def mat_mul(x: Matrix, y: Matrix) -> Matrix:
    (a, b), (c, d) = x
    (e, f), (g, h) = y
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


@dataclass(frozen=True)
class GroupConstants:
    signature: Signature
    h3_exact: tuple  # (TwoCos(p), TwoCos(q)); h3 is their sum
    h3: arb
    L: int
    n_delta: int
    zeta1_exact: UnitRoot
    zeta2_exact: UnitRoot
    zeta1: acb
    zeta2: acb
    M1: Matrix
    M2: Matrix
    M3: Matrix
    arithmetic: bool
    prec: int
    alpha3: Optional[acb] = field(default=None, compare=False)

    def with_alpha3(self, alpha3: acb) -> "GroupConstants":
        return replace(self, alpha3=alpha3)

    def h3_minpoly_terms(self) -> tuple:
        return tuple(t.minpoly() for t in self.h3_exact)


def lcm_order(p: Order, q: Order) -> int:
    if p is INF and q is INF:
        return 1
    if q is INF:
        return p
    return math.lcm(p, q)


def derive_constants(sig: Signature, prec: int = 256) -> GroupConstants:
    L = lcm_order(sig.p, sig.q)
    nd = L * (1 - reciprocal(sig.p) - reciprocal(sig.q))
    assert nd.denominator == 1 and nd > 0
    tp, tq = TwoCos(sig.p), TwoCos(sig.q)
    z1 = UnitRoot(1 - reciprocal(sig.p))
    z2 = UnitRoot(reciprocal(sig.q))
    with ctx.workprec(prec):
        cp, cq = tp.value(), tq.value()
        h3 = cp + cq
        one, zero = arb(1), arb(0)
        M1 = ((-cp, -one), (one, zero))
        M2 = ((zero, one), (-one, cq))
        M3 = ((one, h3), (zero, one))
        zeta1, zeta2 = z1.value(), z2.value()
    return GroupConstants(
        signature=sig, h3_exact=(tp, tq), h3=h3, L=L, n_delta=int(nd),
        zeta1_exact=z1, zeta2_exact=z2, zeta1=zeta1, zeta2=zeta2,
        M1=M1, M2=M2, M3=M3, arithmetic=is_arithmetic(sig), prec=prec,
    )
