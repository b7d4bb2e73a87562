"""Second-order operators preserving the degree-one flag.

The general operator is assembled from (a, b, k0, k1, k2); the Jacobi
and Laguerre operators are its two normalizable specialisations.  All
operators act on exact polynomials and return rational functions, so
polynomiality of the image is a certificate rather than an assumption.
The Pearson identity is checked on the logarithmic derivative of the
weight, which is rational even though the weight itself is not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .classical import ParameterError
from .core import (JACOBI, LAGUERRE, JacobiParams, LaguerreParams, Params,
                   flag_basis, x1_poly)
from .polyalg import (EXACT, Polynomial, RationalFunction, Scalar, as_scalar,
                      backend_of)


@dataclass(frozen=True)
class FlagOperator:
    """p y'' + (q/(x-b)) y' + (r/(x-b)) y with q, r forced by (a, b, c, k_i)."""
    a: Scalar
    b: Scalar
    c: Scalar
    k0: Scalar
    k1: Scalar
    k2: Scalar
    p: Polynomial
    q_num: Polynomial
    r_num: Polynomial


def build_operator(a, b, k0, k1, k2) -> FlagOperator:
    """General flag-preserving operator; requires a != 0 and k0 != 0."""
    if backend_of(a) != EXACT:
        raise ParameterError("operators are exact-backend objects")
    a, b, k0, k1, k2 = (Fraction(v) for v in (a, b, k0, k1, k2))
    if a == 0:
        raise ParameterError("a = 0 leaves c undefined")
    if k0 == 0:
        raise ParameterError("k0 = 0 is excluded")
    c = b + 1 / a
    x_minus_b = Polynomial([-b, 1])
    x_minus_c = Polynomial([-c, 1])
    p = x_minus_b ** 2 * k2 + x_minus_b * k1 + Polynomial([k0])
    linear = x_minus_b * k1 + Polynomial([2 * k0])
    q_num = x_minus_c * linear * a
    r_num = linear * (-a)
    return FlagOperator(a, b, c, k0, k1, k2, p, q_num, r_num)


def jacobi_operator(params: JacobiParams) -> FlagOperator:
    """Specialisation with p = x^2 - 1, i.e. (k2, k1, k0) = (1, 2b, b^2 - 1)."""
    b = Fraction(params.b)
    return build_operator(params.a, b, b * b - 1, 2 * b, 1)


def laguerre_operator(params: LaguerreParams) -> FlagOperator:
    """Specialisation with p = -x, i.e. (k2, k1, k0) = (0, -1, k)."""
    return build_operator(-1, params.b, params.k, -1, 0)


def family_operator(params: Params) -> FlagOperator:
    if params.family == JACOBI:
        return jacobi_operator(params)
    return laguerre_operator(params)


def apply_operator(op: FlagOperator, y: Polynomial) -> RationalFunction:
    """Image of a polynomial under the operator, as a reduced rational function."""
    if y.backend != EXACT:
        raise ParameterError("operators act on exact polynomials")
    x_minus_b = Polynomial([-op.b, 1])
    num = (op.p * y.derivative().derivative() * x_minus_b
           + op.q_num * y.derivative()
           + op.r_num * y)
    return RationalFunction(num, x_minus_b)


def operator_eigenvalue(op: FlagOperator, n: int) -> Scalar:
    """(n-1)(n k2 + a k1); zero at n = 1 for every flag operator."""
    if n < 1:
        raise ValueError("spectrum starts at n = 1")
    return (n - 1) * (n * op.k2 + op.a * op.k1)


def eigen_residual(op: FlagOperator, member) -> RationalFunction:
    """T y - lambda_n y for a constructed family member; zero iff eigenpair."""
    lam = operator_eigenvalue(op, member.n)
    return apply_operator(op, member.poly) - RationalFunction(member.poly * lam)


# -- ladder operators -------------------------------------------------

def lowering_op(params: Params, y: Polynomial) -> RationalFunction:
    """First-order operator shifting parameters up and degree down by one."""
    if params.family == JACOBI:
        a, b, c = params.a, params.b, params.c
        x_b = Polynomial([-b, 1])
        x_c = Polynomial([-c, 1])
        num = x_c * (y.derivative() + y * a) - x_b * y * a
        return RationalFunction(num, x_b)
    k = params.k
    x_k = Polynomial([k, 1])
    x_k1 = Polynomial([k + 1, 1])
    num = -(x_k1 * (y.derivative() - y)) - x_k * y
    return RationalFunction(num, x_k)


def raising_op(params: Params, y: Polynomial) -> RationalFunction:
    """First-order operator mapping the up-shifted flag back, raising degree.

    `params` names the *target* family; the input polynomial is expected
    to live in the flag of the up-shifted parameters.
    """
    if params.family == JACOBI:
        a, b, c = params.a, params.b, params.c
        x_b = Polynomial([-b, 1])
        x_c = Polynomial([-c, 1])
        sq = Polynomial([-1, 0, 1])                 # x^2 - 1
        even = Polynomial([1, -2 * b, 1])           # x^2 - 2bx + 1
        num = sq * x_b * (y.derivative() + y * a) - even * x_c * y * a
        return RationalFunction(num, x_c)
    k = params.k
    x_k = Polynomial([k, 1])
    x_k1 = Polynomial([k + 1, 1])
    num = Polynomial.x() * x_k * (y.derivative() - y) + x_k1 * y * k
    return RationalFunction(num, x_k1)


def lowering_shift_constant(params: Params, n: int) -> Scalar:
    """Constant in A(member_n) = const * shifted-member_{n-1}."""
    if params.family == JACOBI:
        return (n + params.alpha + params.beta) / as_scalar(2, params.backend)
    return as_scalar(1, params.backend)


def raising_shift_constant(params: Params, n: int) -> Scalar:
    """Constant in B(shifted-member_n) = const * member_{n+1}."""
    if params.family == JACOBI:
        return as_scalar(2 * n, params.backend)
    return as_scalar(n, params.backend)


def lowering_action_residual(params: Params, n: int) -> RationalFunction:
    """A(member_n) - const * up-shifted member_{n-1}; zero when the shift holds."""
    y = x1_poly(params, n).poly
    image = lowering_op(params, y)
    if n == 1:
        return image
    target = x1_poly(params.shifted(1), n - 1).poly * lowering_shift_constant(params, n)
    return image - RationalFunction(target)


def raising_action_residual(params: Params, n: int) -> RationalFunction:
    """B(up-shifted member_n) - const * member_{n+1}."""
    y = x1_poly(params.shifted(1), n).poly
    image = raising_op(params, y)
    target = x1_poly(params, n + 1).poly * raising_shift_constant(params, n)
    return image - RationalFunction(target)


def downshifted_params(params: Params) -> Optional[Params]:
    """Parameters shifted down by one, or None when inadmissible."""
    try:
        if params.family == JACOBI:
            from .core import jacobi_params
            return jacobi_params(params.alpha - 1, params.beta - 1)
        from .core import laguerre_params
        return laguerre_params(params.k - 1)
    except ParameterError:
        return None


def factorization_shift_constant(params: Params) -> Scalar:
    """Additive constant in T = A_down B_down - const."""
    if params.family == JACOBI:
        return params.alpha + params.beta
    return as_scalar(1, params.backend)


def factorization_residuals(params: Params, basis_size: int = 8) -> dict:
    """Check both operator factorizations on the flag basis u_1..u_basis_size.

    Returns residual lists for T = B A and (when the down-shifted
    parameters are admissible) T = A_down B_down - const.
    """
    op = family_operator(params)
    forward = []
    for i in range(1, basis_size + 1):
        u = flag_basis(params, i)
        direct = apply_operator(op, u)
        low = lowering_op(params, u).as_polynomial()
        if low is None:
            raise AssertionError("lowering image of a flag member must be polynomial")
        forward.append(raising_op(params, low) - direct)
    down = downshifted_params(params)
    backward = None
    if down is not None:
        const = factorization_shift_constant(params)
        backward = []
        for i in range(1, basis_size + 1):
            u = flag_basis(params, i)
            direct = apply_operator(op, u)
            up = raising_op(down, u).as_polynomial()
            if up is None:
                raise AssertionError("raising image of a flag member must be polynomial")
            composed = lowering_op(down, up) - RationalFunction(u * const)
            backward.append(composed - direct)
    return {"forward": forward, "backward": backward,
            "backward_skipped": down is None}


def adjoint_relation_check(params: Params, f: Polynomial, g: Polynomial,
                           quad: Callable, rel_tol: float = 1e-9) -> dict:
    """Compare (A f, g) under the up-shifted weight with (f, B g) under the base.

    `quad(fn, gn, spec)` must return a float inner product.  Skips (with
    a report) when either ladder image fails the polynomial certificate.
    """
    a_img = lowering_op(params, f).as_polynomial()
    b_img = raising_op(params, g).as_polynomial()
    if a_img is None or b_img is None:
        return {"status": "skipped", "note": "ladder image not polynomial"}
    up_spec = family_weight(params.shifted(1))
    base_spec = family_weight(params)
    left = quad(a_img, g, up_spec)
    right = quad(f, b_img, base_spec)
    scale = abs(left) + abs(right) + 1.0
    ok = abs(left - right) <= rel_tol * scale
    return {"status": "pass" if ok else "fail", "left": left, "right": right,
            "residual": abs(left - right) / scale}


# -- weights -----------------------------------------------------------

@dataclass(frozen=True)
class WeightSpec:
    """Interval, positive weight evaluator, and exact log-derivative."""
    family: str
    interval: tuple
    evaluate: Callable[[float], float]
    logderiv: Optional[RationalFunction]
    normalizable: bool = True
    label: str = ""
    params: tuple = field(default=())


def jacobi_weight(params: JacobiParams) -> WeightSpec:
    """(1-x)^alpha (1+x)^beta / (x-b)^2 on (-1, 1)."""
    af, bf, bb = float(params.alpha), float(params.beta), float(params.b)
    ld = None
    if params.backend == EXACT:
        alpha, beta, b = params.alpha, params.beta, params.b
        ld = (RationalFunction(Polynomial([alpha]), Polynomial([-1, 1]))
              + RationalFunction(Polynomial([beta]), Polynomial([1, 1]))
              - RationalFunction(Polynomial([2]), Polynomial([-b, 1])))

    def evaluate(x: float) -> float:
        return (1 - x) ** af * (1 + x) ** bf / (x - bb) ** 2

    return WeightSpec("jacobi-x1", (-1.0, 1.0), evaluate, ld,
                      label=f"x1-jacobi({params.alpha},{params.beta})",
                      params=(params.alpha, params.beta))


def laguerre_weight(params: LaguerreParams) -> WeightSpec:
    """exp(-x) x^k / (x+k)^2 on (0, inf)."""
    kf = float(params.k)
    ld = None
    if params.backend == EXACT:
        k = params.k
        ld = (RationalFunction(Polynomial([-1]))
              + RationalFunction(Polynomial([k]), Polynomial.x())
              - RationalFunction(Polynomial([2]), Polynomial([k, 1])))

    def evaluate(x: float) -> float:
        return math.exp(-x) * x ** kf / (x + kf) ** 2

    return WeightSpec("laguerre-x1", (0.0, math.inf), evaluate, ld,
                      label=f"x1-laguerre({params.k})", params=(params.k,))


def family_weight(params: Params) -> WeightSpec:
    if params.family == JACOBI:
        return jacobi_weight(params)
    return laguerre_weight(params)


def classical_jacobi_weight(alpha, beta) -> WeightSpec:
    af, bf = float(alpha), float(beta)
    ld = None
    if backend_of(alpha) == EXACT:
        ld = (RationalFunction(Polynomial([Fraction(alpha)]), Polynomial([-1, 1]))
              + RationalFunction(Polynomial([Fraction(beta)]), Polynomial([1, 1])))

    def evaluate(x: float) -> float:
        return (1 - x) ** af * (1 + x) ** bf

    return WeightSpec("jacobi-classical", (-1.0, 1.0), evaluate, ld,
                      label=f"classical-jacobi({alpha},{beta})",
                      params=(alpha, beta))


def classical_laguerre_weight(k) -> WeightSpec:
    kf = float(k)
    ld = None
    if backend_of(k) == EXACT:
        ld = (RationalFunction(Polynomial([-1]))
              + RationalFunction(Polynomial([Fraction(k)]), Polynomial.x()))

    def evaluate(x: float) -> float:
        return math.exp(-x) * x ** kf

    return WeightSpec("laguerre-classical", (0.0, math.inf), evaluate, ld,
                      label=f"classical-laguerre({k})", params=(k,))


def canonical_operator(case: str, a, b) -> FlagOperator:
    """General operator whose second-order coefficient is a canonical form."""
    a, b = Fraction(a), Fraction(b)
    if case == "i":
        return build_operator(a, b, 1 - b * b, -2 * b, -1)
    if case == "ii":
        return build_operator(a, b, 1 + b * b, 2 * b, 1)
    if case == "iii":
        return build_operator(a, b, b * b, 2 * b, 1)
    if case == "iv":
        return build_operator(a, b, b, 1, 0)
    if case == "v":
        return build_operator(a, b, 1, 0, 0)
    raise ValueError(f"unknown canonical case {case!r}")


def canonical_weight(case: str, a, b) -> WeightSpec:
    """Weight solving the Pearson equation for each canonical coefficient form.

    Cases ii, iii and v cannot supply finite moments on any admissible
    interval and are flagged non-normalizable.
    """
    a, b = Fraction(a), Fraction(b)
    af, bf = float(a), float(b)
    x_minus_b = Polynomial([-b, 1])
    pole = RationalFunction(Polynomial([2]), x_minus_b)
    if case == "i":
        ld = (RationalFunction(Polynomial([a * b - a]), Polynomial([-1, 1]))
              + RationalFunction(Polynomial([a * b + a]), Polynomial([1, 1]))
              - pole)

        def evaluate(x: float) -> float:
            return ((1 - x) ** (af * bf - af) * (1 + x) ** (af * bf + af)
                    / (x - bf) ** 2)

        return WeightSpec("canonical-i", (-1.0, 1.0), evaluate, ld,
                          normalizable=True, label=f"canonical-i(a={a},b={b})",
                          params=(a, b))
    if case == "ii":
        ld = (RationalFunction(Polynomial([2 * a, 2 * a * b]), Polynomial([1, 0, 1]))
              - pole)

        def evaluate(x: float) -> float:
            return (math.exp(2 * af * math.atan(x)) * (1 + x * x) ** (af * bf)
                    / (x - bf) ** 2)

        return WeightSpec("canonical-ii", (-math.inf, math.inf), evaluate, ld,
                          normalizable=False, label=f"canonical-ii(a={a},b={b})",
                          params=(a, b))
    if case == "iii":
        ld = RationalFunction(Polynomial([2 * a * b]), Polynomial.x()) - pole

        def evaluate(x: float) -> float:
            return x ** (2 * af * bf) / (x - bf) ** 2

        return WeightSpec("canonical-iii", (0.0, math.inf), evaluate, ld,
                          normalizable=False, label=f"canonical-iii(a={a},b={b})",
                          params=(a, b))
    if case == "iv":
        ld = (RationalFunction(Polynomial([a]))
              + RationalFunction(Polynomial([a * b]), Polynomial.x())
              - pole)

        def evaluate(x: float) -> float:
            return math.exp(af * x) * x ** (af * bf) / (x - bf) ** 2

        return WeightSpec("canonical-iv", (0.0, math.inf), evaluate, ld,
                          normalizable=(a < 0 and b < 0),
                          label=f"canonical-iv(a={a},b={b})", params=(a, b))
    if case == "v":
        ld = RationalFunction(Polynomial([2 * a])) - pole

        def evaluate(x: float) -> float:
            return math.exp(2 * af * x) / (x - bf) ** 2

        return WeightSpec("canonical-v", (-math.inf, math.inf), evaluate, ld,
                          normalizable=False, label=f"canonical-v(a={a},b={b})",
                          params=(a, b))
    raise ValueError(f"unknown canonical case {case!r}")


def pearson_residual(op: FlagOperator, weight: WeightSpec) -> RationalFunction:
    """p (W'/W) + p' - q as a reduced rational function; zero iff Pearson holds."""
    if weight.logderiv is None:
        raise ParameterError("weight has no exact log-derivative")
    q_full = RationalFunction(op.q_num, Polynomial([-op.b, 1]))
    return (RationalFunction(op.p) * weight.logderiv
            + RationalFunction(op.p.derivative()) - q_full)


def boundary_decay_samples(params: Params, y: Polynomial) -> dict:
    """Float samples of the boundary form approaching each endpoint.

    Informational: the sampled values should decay monotonically to 0
    for polynomial y.
    """
    yf = y.to_float() if y.backend == EXACT else y
    dyf = yf.derivative()
    cf = float(params.c)

    def form(x: float) -> float:
        return yf(x) - (x - cf) * dyf(x)

    out = {}
    if params.family == JACOBI:
        af, bf = float(params.alpha), float(params.beta)
        out["right"] = [(1 - 10.0 ** -j) for j in range(2, 9)]
        out["right"] = [abs((1 - x) ** (af + 1) * form(x)) for x in out["right"]]
        out["left"] = [abs((1 + x) ** (bf + 1) * form(x))
                       for x in (-1 + 10.0 ** -j for j in range(2, 9))]
    else:
        kf = float(params.k)
        out["origin"] = [abs(x ** (kf + 1) * math.exp(-x) * form(x))
                         for x in (10.0 ** -j for j in range(2, 9))]
        out["tail"] = [abs(x ** (kf + 1) * math.exp(-x) * form(x))
                       for x in (10.0 * 2 ** j for j in range(7))]
    return out
