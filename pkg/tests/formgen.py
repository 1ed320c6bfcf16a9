"""Builders for forms Delta^m Q(J) with known certificates Q^(2L)."""

import random

from flint import fmpq, fmpq_poly

from triangle_forms.certificate import AutomorphicFormInput
from triangle_forms.discriminant import delta_expansion
from triangle_forms.groups import derive_constants
from triangle_forms.hauptmodul import hauptmodul_expansion
from triangle_forms.series import series_pow


def product_form(sig, m: int, q_coeffs: list, margin: int = 10) -> AutomorphicFormInput:
    """f = Delta_2L^m Q(J), with exactly the number of terms certification needs."""
    const = derive_constants(sig, 64)
    L, nd = const.L, const.n_delta
    deg_q = len(q_coeffs) - 1
    v = m * nd - deg_q
    d = 2 * L * deg_q
    terms = 2 * d + margin + 2
    N = v + terms
    J = hauptmodul_expansion(sig, max(N + deg_q + 1, 2)).series
    QJ = J.truncate(N + deg_q).scale(fmpq(0)).add_scalar(q_coeffs[-1])
    for c in reversed(q_coeffs[:-1]):
        QJ = (QJ * J).add_scalar(c)
    delta = delta_expansion(sig, N + deg_q + nd + 2).series
    f = series_pow(delta, m) * QJ
    return AutomorphicFormInput(sig, 2 * L * m, f.truncate(N))


def random_q(rng: random.Random, degree: int) -> list:
    cs = [fmpq(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(degree)]
    lead = 0
    while lead == 0:
        lead = rng.randint(-5, 5)
    return cs + [fmpq(lead, rng.randint(1, 3))]


def q_power(q_coeffs: list, e: int) -> list:
    return list((fmpq_poly(q_coeffs) ** e).coeffs())
