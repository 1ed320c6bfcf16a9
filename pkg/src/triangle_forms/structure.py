"""Exact polynomial fits of the Hauptmodul coefficients in the group orders.

c_k depends on the signature only through s = 1/q^2 and t = 1/p^2, as a
polynomial of total degree k + 1 with rational coefficients.  Replacing
J by 1 - J and w by -w swaps the roles of p and q, which gives

    c_0(t, s) = 1 - c_0(s, t),   c_k(t, s) = (-1)^(k+1) c_k(s, t)  (k >= 1),

so c_k lives in the symmetric (k odd) or antisymmetric (k even) part of
the monomial space.  Two more facts follow from the construction:

* the degree-(k+1) part of c_k is a multiple of (s - t)^(k+1).  In the
  Frobenius recursion the top-degree part of the m-th coefficient only
  sees p1 = (s - t - 1)/4 (p2 = (1 - s)/4 multiplies an index two lower),
  and exp, reversion and inversion respect this grading;
* at (s, t) = (1, 0) the equation is solved by J = 1 + 1/w, so
  c_k(1, 0) = 0 for k >= 1.

Fits are exact linear solves over Q, with these identities as extra rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from flint import fmpq, fmpq_mat

from .errors import InconsistencyError, ValidationError
from .groups import Signature, reciprocal
from .hauptmodul import hauptmodul_expansion


class Underdetermined(ValidationError):
    """Fewer independent data points than unknown coefficients."""


def _q(x: Fraction) -> fmpq:
    return fmpq(x.numerator, x.denominator)


def st(sig: Signature) -> tuple[fmpq, fmpq]:
    return _q(reciprocal(sig.q) ** 2), _q(reciprocal(sig.p) ** 2)


@dataclass(frozen=True)
class Basis:
    """Combinations s^a t^b +- s^b t^a (or plain monomials), an optional
    top term (s - t)^(k+1), a fixed offset, and linear constraints."""

    k: int
    terms: tuple  # ((a, b, sign), ...) with sign 0 for a lone monomial
    offset: fmpq
    symmetry: str
    top: bool = False
    constraints: tuple = ()  # ((s, t, value), ...): c_k(s, t) = value

    def row(self, s: fmpq, t: fmpq) -> list[fmpq]:
        out = []
        for a, b, sign in self.terms:
            v = s**a * t**b
            if sign:
                v = v + sign * s**b * t**a
            out.append(v)
        if self.top:
            out.append((s - t) ** (self.k + 1))
        return out

    def __len__(self) -> int:
        return len(self.terms) + int(self.top)

    @property
    def unknowns(self) -> int:
        """Free parameters after the constraints."""
        return len(self) - len(self.constraints)


STRUCTURES = ("full", "symmetry", "none")


def coefficient_basis(k: int, structure: str = "full") -> Basis:
    """Ansatz for c_k: "none" is every monomial of degree <= k+1,
    "symmetry" adds the swap identity, "full" also the top-degree and
    degenerate-point identities from the module docstring."""
    if structure not in STRUCTURES:
        raise ValidationError(f"unknown structure {structure!r}")
    deg = k + 1
    if structure == "none":
        terms = tuple((a, n - a, 0) for n in range(deg + 1) for a in range(n + 1))
        return Basis(k, terms, fmpq(0), "none")
    full = structure == "full" and k >= 1
    top_deg = deg - 1 if full else deg
    if k % 2 == 1:
        terms = tuple((a, n - a, 1) for n in range(top_deg + 1) for a in range(n // 2 + 1))
        kind = "symmetric"
    else:
        terms = tuple((a, n - a, -1) for n in range(top_deg + 1) for a in range((n + 1) // 2) if a < n - a)
        kind = "antisymmetric"
    offset = fmpq(1, 2) if k == 0 else fmpq(0)
    constraints = ((fmpq(1), fmpq(0), fmpq(0)),) if full else ()
    return Basis(k, terms, offset, kind, full, constraints)


@dataclass(frozen=True)
class CoefficientFit:
    basis: Basis
    weights: tuple
    signatures: tuple

    def predict(self, sig: Signature) -> fmpq:
        s, t = st(sig)
        return self.basis.offset + sum((w * v for w, v in zip(self.weights, self.basis.row(s, t))), fmpq(0))

    def monomials(self) -> dict[tuple[int, int], fmpq]:
        """The fitted polynomial as {(deg_s, deg_t): coefficient}."""
        out: dict[tuple[int, int], fmpq] = {}
        if self.basis.offset:
            out[(0, 0)] = self.basis.offset
        for w, (a, b, sign) in zip(self.weights, self.basis.terms):
            out[(a, b)] = out.get((a, b), fmpq(0)) + w
            if sign:
                out[(b, a)] = out.get((b, a), fmpq(0)) + sign * w
        if self.basis.top:
            n, w = self.basis.k + 1, self.weights[-1]
            binom = 1
            for i in range(n + 1):
                out[(n - i, i)] = out.get((n - i, i), fmpq(0)) + w * binom * (-1) ** i
                binom = binom * (n - i) // (i + 1)
        return {key: v for key, v in sorted(out.items()) if v != 0}


def coefficient_value(sig: Signature, k: int) -> fmpq:
    return hauptmodul_expansion(sig, k + 2).series[k]


def solve_exact(rows: list[list[fmpq]], rhs: list[fmpq]) -> list[fmpq]:
    """Unique solution of an exact rational system, checked for consistency."""
    n = len(rows[0])
    if len(rows) < n:
        raise Underdetermined(f"{len(rows)} equations for {n} unknowns")
    aug = fmpq_mat(len(rows), n + 1, [x for r, y in zip(rows, rhs) for x in list(r) + [y]])
    red, rank = aug.rref()
    pivots = []
    for i in range(rank):
        j = next(j for j in range(n + 1) if red[i, j] != 0)
        if j == n:
            raise InconsistencyError("the data admit no polynomial of this shape")
        pivots.append(j)
    if rank < n:
        raise Underdetermined(f"rank {rank} < {n} unknowns")
    return [red[i, n] for i in range(n)]


def fit_coefficient(k: int, signatures: Sequence[Signature], structure: str = "full") -> CoefficientFit:
    """Fit c_k on the given signatures; constraint rows are identities, not data."""
    basis = coefficient_basis(k, structure)
    rows, rhs = [], []
    for s, t, value in basis.constraints:
        rows.append(basis.row(s, t))
        rhs.append(value - basis.offset)
    for sig in signatures:
        s, t = st(sig)
        rows.append(basis.row(s, t))
        rhs.append(coefficient_value(sig, k) - basis.offset)
    return CoefficientFit(basis, tuple(solve_exact(rows, rhs)), tuple(signatures))
