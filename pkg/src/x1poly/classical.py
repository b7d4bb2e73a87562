"""Classical Jacobi and Laguerre polynomials and their norm constants.

These are the oracles and building blocks for the degree-one families:
everything here is textbook material, evaluated exactly over rationals
whenever the parameters allow it.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional

from .polyalg import EXACT, Polynomial, Scalar, as_scalar, backend_of


class ParameterError(ValueError):
    """A parameter combination outside the admissible range."""


def jacobi_poly(alpha, beta, n: int, backend: Optional[str] = None) -> Polynomial:
    """Classical Jacobi polynomial by the standard three-term recurrence.

    Normalisation: value at 1 equals binom(n + alpha, n).
    """
    if backend is None:
        backend = backend_of(alpha)
    a = as_scalar(alpha, backend)
    b = as_scalar(beta, backend)
    two = as_scalar(2, backend)
    if n < 0:
        return Polynomial.zero(backend)
    p_prev = Polynomial.one(backend)
    if n == 0:
        return p_prev
    p_cur = Polynomial([(a - b) / two, (a + b + 2) / two], backend)
    for i in range(2, n + 1):
        den = i * (a + b + i) * (a + b + 2 * i - 2)
        if den == 0:
            raise ParameterError(
                f"degenerate Jacobi recurrence at degree {i}: "
                f"alpha+beta = {a + b}")
        c0 = (a + b + 2 * i - 1) * (a * a - b * b) / (2 * den)
        c1 = (a + b + 2 * i - 1) * (a + b + 2 * i - 2) * (a + b + 2 * i) / (2 * den)
        c2 = (a + i - 1) * (b + i - 1) * (a + b + 2 * i) / den
        p_next = p_cur * Polynomial([c0, c1], backend) - p_prev * c2
        p_prev, p_cur = p_cur, p_next
    return p_cur


def laguerre_poly(k, n: int, backend: Optional[str] = None) -> Polynomial:
    """Generalized Laguerre polynomial; leading coefficient (-1)^n / n!."""
    if backend is None:
        backend = backend_of(k)
    kk = as_scalar(k, backend)
    if n < 0:
        return Polynomial.zero(backend)
    p_prev = Polynomial.one(backend)
    if n == 0:
        return p_prev
    p_cur = Polynomial([kk + 1, -1], backend)
    for i in range(2, n + 1):
        # i*L_i + (x - 2i - k + 1)*L_{i-1} + (i + k - 1)*L_{i-2} = 0
        mid = Polynomial([2 * i + kk - 1, -1], backend)
        inv = as_scalar(Fraction(1, i), backend)
        p_prev, p_cur = p_cur, (p_cur * mid - p_prev * (i + kk - 1)) * inv
    return p_cur


def laguerre_contiguous_identities(k, n: int) -> dict:
    """Check L_n^{(k)} = L_n^{(k+1)} - L_{n-1}^{(k+1)} and (L_n^{(k)})' = -L_{n-1}^{(k+1)}.

    Exact-backend identity check; returns the two boolean verdicts.
    """
    if n < 1:
        raise ValueError("contiguous identities need n >= 1")
    base = laguerre_poly(k, n, EXACT)
    up_n = laguerre_poly(Fraction(k) + 1, n, EXACT)
    up_prev = laguerre_poly(Fraction(k) + 1, n - 1, EXACT)
    return {
        "difference": base == up_n - up_prev,
        "derivative": base.derivative() == -up_prev,
    }


def gamma_ratio_exact(x: Fraction, y: Fraction) -> Optional[Fraction]:
    """Gamma(x)/Gamma(y) as an exact rational when x - y is an integer.

    Returns None when the ratio does not telescope. Both arguments must
    stay off the poles along the telescoped range.
    """
    x, y = Fraction(x), Fraction(y)
    step = x - y
    if step.denominator != 1:
        return None
    m = step.numerator
    if m >= 0:
        out = Fraction(1)
        for i in range(m):
            term = y + i
            if term == 0:
                raise ParameterError("gamma ratio crosses a pole")
            out *= term
        return out
    inv = gamma_ratio_exact(y, x)
    if inv == 0:
        raise ParameterError("gamma ratio crosses a pole")
    return 1 / inv


def _pow2_exact(e: Fraction) -> Optional[Fraction]:
    if e.denominator != 1:
        return None
    return Fraction(2) ** e.numerator


def jacobi_norm_constant(alpha, beta, n: int):
    """Squared L2 norm of the classical Jacobi polynomial of degree n.

    Exact rational when all the Gamma ratios telescope (integer alpha,
    beta); float via math.gamma otherwise.
    """
    if backend_of(alpha) == EXACT and backend_of(beta) == EXACT:
        a, b = Fraction(alpha), Fraction(beta)
        if a <= -1 or b <= -1:
            raise ParameterError("jacobi norm constant needs alpha, beta > -1")
        front = _pow2_exact(a + b + 1)
        if front is not None:
            # pair Gamma(a+n+1)/Gamma(n+1) with Gamma(b+n+1)/Gamma(a+b+n+1)
            r1 = gamma_ratio_exact(a + n + 1, Fraction(n + 1))
            r2 = gamma_ratio_exact(b + n + 1, a + b + n + 1)
            if r1 is None or r2 is None:
                r1 = gamma_ratio_exact(b + n + 1, Fraction(n + 1))
                r2 = gamma_ratio_exact(a + n + 1, a + b + n + 1)
            if r1 is not None and r2 is not None:
                return front / (a + b + 2 * n + 1) * r1 * r2
        alpha, beta = float(a), float(b)
    af, bf = float(alpha), float(beta)
    return (2.0 ** (af + bf + 1) / (af + bf + 2 * n + 1)
            * math.gamma(af + n + 1) * math.gamma(bf + n + 1)
            / (math.gamma(n + 1) * math.gamma(af + bf + n + 1)))


def jacobi_norm_ratio(alpha, beta, n: int) -> Scalar:
    """C_n / C_{n-1}, exact for rational parameters."""
    if n < 1:
        raise ValueError("norm ratio needs n >= 1")
    backend = backend_of(alpha)
    a = as_scalar(alpha, backend)
    b = as_scalar(beta, backend)
    den = n * (a + b + n) * (a + b + 2 * n + 1)
    if den == 0:
        raise ParameterError("degenerate norm ratio denominator")
    return (a + n) * (b + n) * (a + b + 2 * n - 1) / den


def laguerre_norm_constant(k, n: int):
    """Squared L2 norm of the classical Laguerre polynomial: Gamma(n+k+1)/n!."""
    if backend_of(k) == EXACT:
        kk = Fraction(k)
        if kk <= -1:
            raise ParameterError("laguerre norm constant needs k > -1")
        ratio = gamma_ratio_exact(kk + n + 1, Fraction(n + 1))
        if ratio is not None:
            return ratio
        k = float(kk)
    return math.gamma(float(k) + n + 1) / math.gamma(n + 1)


def laguerre_norm_ratio(k, n: int):
    """K_n / K_{n-1} = (n + k) / n."""
    if n < 1:
        raise ValueError("norm ratio needs n >= 1")
    if backend_of(k) == EXACT:
        return (Fraction(k) + n) / n
    return (float(k) + n) / n


def binomial_general(top, m: int):
    """binom(top, m) for a rational (not necessarily integer) top.

    Evaluated as the falling-factorial product top(top-1)...(top-m+1)/m!.
    """
    if m < 0:
        raise ValueError("lower index must be >= 0")
    backend = backend_of(top)
    out = as_scalar(1, backend)
    t = as_scalar(top, backend)
    for j in range(m):
        out = out * (t - j)
    return out / as_scalar(Fraction(math.factorial(m)), backend)
