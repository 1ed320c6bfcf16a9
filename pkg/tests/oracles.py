"""Classical modular-form expansions in plain Python integers.

Independent of the package: no flint, no series engine.  Used as oracles
for the (2,3,oo) case, where J = j/1728 and qtilde = 1728 q.
"""

from fractions import Fraction


def sigma(k: int, n: int) -> int:
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


def eisenstein_e4(n: int) -> list[int]:
    return [1] + [240 * sigma(3, m) for m in range(1, n)]


def eisenstein_e6(n: int) -> list[int]:
    return [1] + [-504 * sigma(5, m) for m in range(1, n)]


def _mul(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                out[i + j] += x * y
    return out


def eta_delta(n: int) -> list[int]:
    """Coefficients of q^1 .. q^n of Delta = q prod (1 - q^m)^24 (index 0 is q^1)."""
    prod = [1] + [0] * (n - 1)
    for m in range(1, n):
        # multiply by (1 - q^m)^24 via the binomial expansion
        factor = [0] * n
        for r in range(0, 25):
            if r * m >= n:
                break
            c = 1
            for t in range(r):
                c = c * (24 - t) // (t + 1)
            factor[r * m] = (-1) ** r * c
        prod = _mul(prod, factor, n)
    return prod


def j_coefficients(n: int) -> list[int]:
    """c(-1), c(0), ..., c(n-2) of j = E4^3 / Delta."""
    e4 = eisenstein_e4(n)
    num = _mul(_mul(e4, e4, n), e4, n)
    den = eta_delta(n)  # Delta / q, leading 1
    quo = [0] * n
    for k in range(n):
        quo[k] = num[k] - sum(quo[i] * den[k - i] for i in range(k))
    return quo


def hauptmodul_23(n: int) -> list[Fraction]:
    """Coefficients of qtilde^-1 .. qtilde^(n-2) of j/1728 with qtilde = 1728 q."""
    js = j_coefficients(n)
    # j = sum a_k q^(k-1);  q^(k-1) = qtilde^(k-1) / 1728^(k-1)
    return [Fraction(a, 1728 * 1728 ** (k - 1)) if k >= 1 else Fraction(a * 1728, 1728)
            for k, a in enumerate(js)]


def delta_23(n: int) -> list[Fraction]:
    """Coefficients of qtilde^1 .. qtilde^n of 1728 Delta(q) with qtilde = 1728 q."""
    return [Fraction(1728 * a, 1728 ** (k + 1)) for k, a in enumerate(eta_delta(n))]


def e4_qtilde(n: int) -> list[Fraction]:
    """E4 in qtilde = 1728 q, coefficients of qtilde^0 .. qtilde^(n-1)."""
    return [Fraction(a, 1728**k) for k, a in enumerate(eisenstein_e4(n))]


def e6_qtilde(n: int) -> list[Fraction]:
    return [Fraction(a, 1728**k) for k, a in enumerate(eisenstein_e6(n))]


# classical CM values of j
J_OF_I = 1728
J_OF_2I = 66**3
J_OF_RHO = 0
