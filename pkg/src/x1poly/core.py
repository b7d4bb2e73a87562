"""Parameter records, the degree-one flag, and the X1 polynomial families.

The reference construction used throughout is the two-term combination
of classical polynomials; the three-term variant, the Rodrigues ladder
and numeric Gram-Schmidt all have to reproduce it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .classical import ParameterError, binomial_general, jacobi_poly, laguerre_poly
from .polyalg import (EXACT, Polynomial, Scalar, as_scalar, backend_of,
                      check_same_backend)

JACOBI = "jacobi"
LAGUERRE = "laguerre"


def _sign(v) -> int:
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class JacobiParams:
    """Validated X1-Jacobi parameters with all derived quantities."""
    alpha: Scalar
    beta: Scalar
    a: Scalar
    b: Scalar
    c: Scalar

    @property
    def family(self) -> str:
        return JACOBI

    @property
    def backend(self) -> str:
        return backend_of(self.alpha)

    def shifted(self, step: int = 1) -> "JacobiParams":
        """Parameters for (alpha + step, beta + step); a is unchanged."""
        return jacobi_params(self.alpha + step, self.beta + step)

    def mirrored(self) -> "JacobiParams":
        """Swap alpha and beta; realises the x -> -x reflection."""
        return jacobi_params(self.beta, self.alpha)

    def label(self) -> str:
        return f"alpha={self.alpha}, beta={self.beta}"


@dataclass(frozen=True)
class LaguerreParams:
    """Validated X1-Laguerre parameters: a = -1, b = -k, c = -(k+1)."""
    k: Scalar
    a: Scalar
    b: Scalar
    c: Scalar

    @property
    def family(self) -> str:
        return LAGUERRE

    @property
    def backend(self) -> str:
        return backend_of(self.k)

    def shifted(self, step: int = 1) -> "LaguerreParams":
        return laguerre_params(self.k + step)

    def label(self) -> str:
        return f"k={self.k}"


Params = Union[JacobiParams, LaguerreParams]


def jacobi_params(alpha, beta) -> JacobiParams:
    backend = check_same_backend(backend_of(alpha), backend_of(beta))
    alpha = as_scalar(alpha, backend)
    beta = as_scalar(beta, backend)
    if alpha == beta:
        raise ParameterError("alpha = beta leaves b undefined")
    if alpha <= -1 or beta <= -1:
        raise ParameterError("alpha > -1 and beta > -1 required")
    if _sign(alpha) != _sign(beta):
        raise ParameterError("sgn alpha = sgn beta required")
    a = (beta - alpha) / as_scalar(2, backend)
    b = (beta + alpha) / (beta - alpha)
    c = b + 1 / a
    if not abs(b) > 1:
        raise ParameterError(f"|b| > 1 violated: b = {b}")
    return JacobiParams(alpha, beta, a, b, c)


def laguerre_params(k) -> LaguerreParams:
    backend = backend_of(k)
    k = as_scalar(k, backend)
    if not k > 0:
        raise ParameterError("k > 0 required")
    one = as_scalar(1, backend)
    return LaguerreParams(k, -one, -k, -(k + one))


@dataclass(frozen=True)
class X1Poly:
    """A member of one of the degree-one families, with its parameters."""
    family: str
    n: int
    params: Params
    poly: Polynomial


def jacobi_flag_basis(params: JacobiParams, i: int) -> Polynomial:
    """u_1 = x - c, u_i = (x - b)^i for i >= 2."""
    if i < 1:
        raise ValueError("flag basis starts at i = 1")
    backend = params.backend
    if i == 1:
        return Polynomial([-params.c, 1], backend)
    return Polynomial([-params.b, 1], backend) ** i


def laguerre_flag_basis(params: LaguerreParams, i: int) -> Polynomial:
    """v_1 = x + k + 1, v_i = (x + k)^i for i >= 2."""
    if i < 1:
        raise ValueError("flag basis starts at i = 1")
    backend = params.backend
    if i == 1:
        return Polynomial([params.k + 1, 1], backend)
    return Polynomial([params.k, 1], backend) ** i


def flag_basis(params: Params, i: int) -> Polynomial:
    if params.family == JACOBI:
        return jacobi_flag_basis(params, i)
    return laguerre_flag_basis(params, i)


def in_flag(params: Params, p: Polynomial) -> bool:
    """Exact membership test p'(b) + a*p(b) = 0."""
    if p.backend != EXACT or params.backend != EXACT:
        raise ValueError("flag membership is an exact-backend check")
    b = params.b
    return p.derivative()(b) + params.a * p(b) == 0


def jacobi_value_at_one(params: JacobiParams, n: int) -> Scalar:
    """Prescribed normalisation value of the degree-n X1-Jacobi member at 1."""
    return ((params.alpha + n) / (params.beta - params.alpha)
            * binomial_general(params.alpha + n - 2, n - 1))


def laguerre_leading_coefficient(n: int, backend: str = EXACT) -> Scalar:
    """Prescribed leading coefficient (-1)^n / (n-1)! of the degree-n member."""
    return as_scalar(Fraction((-1) ** n, math.factorial(n - 1)), backend)


def _validate_jacobi(params: JacobiParams, n: int, poly: Polynomial) -> None:
    if poly.degree != n:
        raise AssertionError(f"construction produced degree {poly.degree}, wanted {n}")
    if params.backend == EXACT:
        if not in_flag(params, poly):
            raise AssertionError("constructed polynomial left the flag")
        if poly(as_scalar(1, EXACT)) != jacobi_value_at_one(params, n):
            raise AssertionError("normalisation value at x = 1 is off")


def _validate_laguerre(params: LaguerreParams, n: int, poly: Polynomial) -> None:
    if poly.degree != n:
        raise AssertionError(f"construction produced degree {poly.degree}, wanted {n}")
    if params.backend == EXACT:
        if not in_flag(params, poly):
            raise AssertionError("constructed polynomial left the flag")
        if poly.leading_coefficient() != laguerre_leading_coefficient(n):
            raise AssertionError("leading coefficient is off")


def x1_jacobi(params: JacobiParams, n: int) -> X1Poly:
    """Degree-n X1-Jacobi member from two classical Jacobi polynomials.

    The degree-(n-2) term uses the convention P_{-1} = 0, so n = 1 is
    covered by the same formula.
    """
    if n < 1:
        raise ValueError("the family starts at degree 1")
    backend = params.backend
    alpha, beta, b = params.alpha, params.beta, params.b
    p_prev = jacobi_poly(alpha, beta, n - 1, backend)
    p_prev2 = jacobi_poly(alpha, beta, n - 2, backend)
    half = as_scalar(Fraction(1, 2), backend)
    den = alpha + beta + 2 * n - 2
    if den == 0:
        raise ParameterError("degenerate combination denominator alpha+beta+2n-2 = 0")
    poly = (Polynomial([-b, 1], backend) * p_prev * (-half)
            + (p_prev * b - p_prev2) * (1 / den))
    out = X1Poly(JACOBI, n, params, poly)
    _validate_jacobi(params, n, poly)
    return out


def x1_laguerre(params: LaguerreParams, n: int) -> X1Poly:
    """Degree-n X1-Laguerre member, convention L_{-1} = 0."""
    if n < 1:
        raise ValueError("the family starts at degree 1")
    backend = params.backend
    k = params.k
    l_prev = laguerre_poly(k, n - 1, backend)
    l_prev2 = laguerre_poly(k, n - 2, backend)
    poly = -(Polynomial([k + 1, 1], backend) * l_prev) + l_prev2
    out = X1Poly(LAGUERRE, n, params, poly)
    _validate_laguerre(params, n, poly)
    return out


def x1_poly(params: Params, n: int) -> X1Poly:
    if params.family == JACOBI:
        return x1_jacobi(params, n)
    return x1_laguerre(params, n)


def x1_jacobi_3term(params: JacobiParams, n: int) -> Polynomial:
    """Equivalent three-term combination -f_n P_n + 2b g_n P_{n-1} - h_n P_{n-2}."""
    if n < 1:
        raise ValueError("the family starts at degree 1")
    backend = params.backend
    a, b = params.alpha, params.beta
    s = a + b
    for name, den in (("f", (s + 2 * n - 1) * (s + 2 * n)),
                      ("g", (s + 2 * n - 2) * (s + 2 * n)),
                      ("h", (s + 2 * n - 2) * (s + 2 * n - 1))):
        if den == 0:
            raise ParameterError(f"degenerate {name}_n denominator")
    f_n = n * (s + n) / ((s + 2 * n - 1) * (s + 2 * n))
    g_n = (a + n) * (b + n) / ((s + 2 * n - 2) * (s + 2 * n))
    h_n = (a + n) * (b + n) / ((s + 2 * n - 2) * (s + 2 * n - 1))
    two_b = 2 * params.b
    return (jacobi_poly(a, b, n, backend) * (-f_n)
            + jacobi_poly(a, b, n - 1, backend) * (two_b * g_n)
            - jacobi_poly(a, b, n - 2, backend) * h_n)


def x1_laguerre_3term(params: LaguerreParams, n: int) -> Polynomial:
    """Equivalent combination n L_n - 2(n+k) L_{n-1} + (n+k) L_{n-2}."""
    if n < 1:
        raise ValueError("the family starts at degree 1")
    backend = params.backend
    k = params.k
    return (laguerre_poly(k, n, backend) * as_scalar(n, backend)
            - laguerre_poly(k, n - 1, backend) * (2 * (n + k))
            + laguerre_poly(k, n - 2, backend) * (n + k))


def inverse_relation_residual(params: Params, n: int) -> Polynomial:
    """Residual of the inversion expressing (x-b)^2 * classical_n in X1 terms.

    Zero polynomial when the identity holds.  Uses the convention that
    the (nonexistent) degree-0 family member is the zero polynomial.
    """
    if n < 0:
        raise ValueError("n >= 0")
    backend = params.backend

    def member(m: int) -> Polynomial:
        if m < 1:
            return Polynomial.zero(backend)
        return x1_poly(params, m).poly

    if params.family == LAGUERRE:
        k = params.k
        lhs = Polynomial([k, 1], backend) ** 2 * laguerre_poly(k, n, backend)
        rhs = (member(n + 2) * as_scalar(n + 1, backend)
               - member(n + 1) * (2 * (n + k))
               + member(n) * (n + k - 1))
        return lhs - rhs
    a, b = params.alpha, params.beta
    s = a + b
    f_next = (n + 1) * (s + n + 1) / ((s + 2 * n + 1) * (s + 2 * n + 2))
    g_hat = (n + a) * (n + b) / ((s + 2 * n) * (s + 2 * n + 2))
    h_hat = (n - 1 + a) * (n - 1 + b) / ((s + 2 * n) * (s + 2 * n + 1))
    quarter = as_scalar(Fraction(1, 4), backend)
    lhs = (Polynomial([-params.b, 1], backend) ** 2
           * jacobi_poly(a, b, n, backend) * (-quarter))
    rhs = (member(n + 2) * f_next
           - member(n + 1) * (2 * params.b * g_hat)
           + member(n) * h_hat)
    return lhs - rhs


def flag_coordinates(params: Params, p: Polynomial) -> tuple:
    """Coordinates of a flag member in the basis u_1, u_2, ..., u_deg.

    Expands about b; the constant and linear Taylor coefficients are
    consistent exactly when p is in the flag (c_1 = -a c_0), and the
    u_1 coordinate is c_1.
    """
    if not in_flag(params, p):
        raise ValueError("polynomial is not in the flag")
    t = p.taylor_at(params.b)
    return t[1:]  # (u_1 coord, u_2 coord, ...)
