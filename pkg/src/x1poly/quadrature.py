"""Gaussian quadrature, weighted inner products, Gram-Schmidt, norms.

Inner products under the degree-one-family weights fold the rational
factor 1/(x-b)^2 (resp. 1/(x+k)^2) into the integrand of the classical
rule for the interval: the factor is smooth there because the pole sits
outside the closed domain.  Convergence is certified by node doubling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Union

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .classical import (ParameterError, jacobi_norm_constant,
                        laguerre_norm_constant)
from .core import (JACOBI, JacobiParams, LaguerreParams, Params,
                   jacobi_value_at_one, laguerre_leading_coefficient, x1_poly)
from .operators import WeightSpec, family_weight
from .polyalg import FLOAT, Polynomial

MAX_NODES = 4096


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    kind: str


@dataclass(frozen=True)
class InnerProductEstimate:
    value: float
    error_estimate: float
    nodes_used: int
    converged: bool


class QuadratureError(RuntimeError):
    """Quadrature failed to converge or to build a rule."""


def _legendre_value_and_derivative(m: int, x: np.ndarray):
    p_prev = np.ones_like(x)
    p = x.copy()
    for i in range(2, m + 1):
        p_prev, p = p, ((2 * i - 1) * x * p - (i - 1) * p_prev) / i
    dp = m * (x * p - p_prev) / (x * x - 1.0)
    return p, dp


@lru_cache(maxsize=None)
def gauss_legendre(m: int) -> QuadratureRule:
    """m-point Gauss-Legendre rule by Newton iteration on the roots."""
    if m < 1:
        raise ValueError("rule size must be >= 1")
    if m == 1:
        return QuadratureRule(np.zeros(1), np.full(1, 2.0), "gauss-legendre")
    i = np.arange(1, m + 1)
    x = np.cos(math.pi * (i - 0.25) / (m + 0.5))
    for _ in range(100):
        p, dp = _legendre_value_and_derivative(m, x)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    else:
        raise QuadratureError(f"Legendre Newton iteration stalled at m={m}")
    _, dp = _legendre_value_and_derivative(m, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    order = np.argsort(x)
    return QuadratureRule(x[order], w[order], "gauss-legendre")


@lru_cache(maxsize=None)
def gauss_laguerre_gen(k: float, m: int) -> QuadratureRule:
    """m-point generalized Gauss-Laguerre rule for the weight x^k e^{-x}.

    Nodes and weights come from the symmetric tridiagonal eigenproblem
    built from the known recurrence coefficients; weights scale the
    squared first eigenvector components by Gamma(k+1).
    """
    k = float(k)
    if k <= -1:
        raise ParameterError("generalized Laguerre rule needs k > -1")
    if m < 1:
        raise ValueError("rule size must be >= 1")
    diag = 2.0 * np.arange(m) + k + 1.0
    i = np.arange(1, m)
    off = np.sqrt(i * (i + k))
    try:
        nodes, vectors = eigh_tridiagonal(diag, off)
    except Exception as exc:  # eigensolver failure surfaces as QuadratureError
        raise QuadratureError(f"tridiagonal eigenproblem failed at m={m}") from exc
    weights = math.gamma(k + 1.0) * vectors[0, :] ** 2
    return QuadratureRule(nodes, weights, f"gauss-laguerre-generalized({k})")


Evaluatable = Union[Polynomial, Callable[[np.ndarray], np.ndarray]]


def as_array_function(f: Evaluatable) -> Callable[[np.ndarray], np.ndarray]:
    """Vectorised evaluator for polynomials or plain callables."""
    if isinstance(f, Polynomial):
        coeffs = np.array([float(c) for c in f.coeffs], dtype=float)
        if coeffs.size == 0:
            coeffs = np.zeros(1)

        def evaluate(x: np.ndarray) -> np.ndarray:
            acc = np.zeros_like(x)
            for c in coeffs[::-1]:
                acc = acc * x + c
            return acc

        return evaluate
    return f


def _sampler(spec: WeightSpec):
    """Sampling function m -> (points, total weights) for the weighted integral.

    Gauss-Legendre carries the whole weight in the integrand, after the
    substitution x = sin(pi t / 2); the substitution turns half-integer
    endpoint exponents (1 -/+ x)^(p/2) into analytic factors, restoring
    exponential convergence without leaving the Legendre rule.  The
    generalized Laguerre rule natively handles x^k e^{-x} and only the
    smooth factor 1/(x+k)^2 is folded in.
    """
    fam = spec.family
    if fam in ("jacobi-x1", "jacobi-classical", "canonical-i"):
        if fam == "canonical-i":
            a, b_pole = (float(v) for v in spec.params)
            alpha, beta = a * b_pole - a, a * b_pole + a
        else:
            alpha, beta = (float(v) for v in spec.params)
            b_pole = (beta + alpha) / (beta - alpha) if fam == "jacobi-x1" else None
        if fam == "jacobi-classical":
            def factor(x: np.ndarray) -> np.ndarray:
                return (1 - x) ** alpha * (1 + x) ** beta
        else:
            def factor(x: np.ndarray) -> np.ndarray:
                return (1 - x) ** alpha * (1 + x) ** beta / (x - b_pole) ** 2

        def sample(m: int):
            rule = gauss_legendre(m)
            t = rule.nodes
            x = np.sin(0.5 * math.pi * t)
            jac = 0.5 * math.pi * np.cos(0.5 * math.pi * t)
            return x, rule.weights * jac * factor(x)

        return sample
    if fam in ("laguerre-x1", "laguerre-classical", "canonical-iv"):
        if fam == "canonical-iv":
            a, b = (float(v) for v in spec.params)
            if a != -1.0 or b >= 0:
                raise QuadratureError(
                    "canonical case iv integrates as printed only for a = -1, b < 0")
            k, pole = a * b, -b
        else:
            k = float(spec.params[0])
            pole = k if fam == "laguerre-x1" else None
        if pole is None:
            def factor(x: np.ndarray) -> np.ndarray:
                return np.ones_like(x)
        else:
            def factor(x: np.ndarray) -> np.ndarray:
                return 1.0 / (x + pole) ** 2

        def sample(m: int):
            rule = gauss_laguerre_gen(k, m)
            return rule.nodes, rule.weights * factor(rule.nodes)

        return sample
    raise QuadratureError(f"no quadrature strategy for weight family {fam!r}")


def inner_product(f: Evaluatable, g: Evaluatable, spec: WeightSpec,
                  start_nodes: int = 64, rel_tol: float = 1e-10,
                  scale: float = 1.0) -> InnerProductEstimate:
    """Weighted inner product with node-doubling convergence control."""
    if not spec.normalizable:
        raise QuadratureError(f"weight {spec.label} has no finite moments")
    sample = _sampler(spec)
    fe, ge = as_array_function(f), as_array_function(g)

    def estimate(m: int) -> float:
        x, wt = sample(m)
        return float(np.sum(wt * fe(x) * ge(x)))

    m = max(2, start_nodes // 2)
    prev = estimate(m)
    while True:
        m *= 2
        cur = estimate(m)
        err = abs(cur - prev)
        if err <= rel_tol * (abs(cur) + scale):
            return InnerProductEstimate(cur, err, m, True)
        if m >= MAX_NODES:
            return InnerProductEstimate(cur, err, m, False)
        prev = cur


def require_converged(est: InnerProductEstimate) -> float:
    if not est.converged:
        raise QuadratureError(
            f"quadrature did not converge ({est.nodes_used} nodes, "
            f"error estimate {est.error_estimate:.3e})")
    return est.value


def quad_value(f: Evaluatable, g: Evaluatable, spec: WeightSpec, **kw) -> float:
    """Converged inner product as a bare float (raises when not converged)."""
    return require_converged(inner_product(f, g, spec, **kw))


# -- Gram-Schmidt -------------------------------------------------------

def gram_schmidt(spec: WeightSpec, basis: Sequence[Polynomial],
                 normalization: Callable[[int, Polynomial], Polynomial]) -> List[Polynomial]:
    """Modified Gram-Schmidt on float polynomials under the given weight.

    `normalization(n, p)` rescales the n-th orthogonal polynomial to the
    family convention (1-indexed).
    """
    out: List[Polynomial] = []
    norms: List[float] = []
    for i, b in enumerate(basis, start=1):
        work = b.to_float() if b.backend != FLOAT else b
        for q, q_norm2 in zip(out, norms):
            proj = quad_value(work, q, spec)
            work = work - q * (proj / q_norm2)
        norm2 = quad_value(work, work, spec)
        if norm2 <= 0 or not math.isfinite(norm2):
            raise QuadratureError(f"ill-conditioned orthogonalisation at step {i}")
        out.append(work)
        norms.append(norm2)
    return [normalization(i, p) for i, p in enumerate(out, start=1)]


def jacobi_normalizer(params: JacobiParams) -> Callable[[int, Polynomial], Polynomial]:
    def normalize(n: int, p: Polynomial) -> Polynomial:
        target = float(jacobi_value_at_one(params, n))
        value = p(1.0)
        return p * (target / value)
    return normalize


def laguerre_normalizer(params: LaguerreParams) -> Callable[[int, Polynomial], Polynomial]:
    def normalize(n: int, p: Polynomial) -> Polynomial:
        target = float(laguerre_leading_coefficient(n))
        return p * (target / p.leading_coefficient())
    return normalize


def gram_schmidt_family(params: Params, count: int) -> List[Polynomial]:
    """First `count` family members by numeric Gram-Schmidt on the flag basis."""
    from .core import flag_basis
    spec = family_weight(params)
    basis = [flag_basis(params, i) for i in range(1, count + 1)]
    if params.family == JACOBI:
        return gram_schmidt(spec, basis, jacobi_normalizer(params))
    return gram_schmidt(spec, basis, laguerre_normalizer(params))


# -- norm verification ---------------------------------------------------

def printed_norm_factor(params: Params, n: int) -> float:
    """The factor multiplying the classical norm constant, as printed."""
    if params.family == JACOBI:
        af, bf = float(params.alpha), float(params.beta)
        return ((af + n) * (bf + n)) / (4.0 * (af + n - 1) * (bf + n - 1))
    kf = float(params.k)
    return (kf + n - 1) / (kf + n)


def classical_norm_value(params: Params, n: int) -> float:
    if params.family == JACOBI:
        return float(jacobi_norm_constant(float(params.alpha), float(params.beta), n))
    return float(laguerre_norm_constant(float(params.k), n))


def norm_verdict(params: Params, n: int, rel_tol: float = 1e-7) -> dict:
    """Dual-orientation norm check against quadrature.

    The printed closed forms are typographically damaged, so the check
    accepts whichever orientation (factor or its reciprocal) matches the
    quadrature value, and reports the verdict.
    """
    member = x1_poly(params, n).poly
    value = quad_value(member, member, family_weight(params))
    base = classical_norm_value(params, n - 1)
    factor = printed_norm_factor(params, n)
    printed = factor * base
    inverted = base / factor
    rel_printed = abs(value - printed) / abs(value)
    rel_inverted = abs(value - inverted) / abs(value)
    if rel_printed <= rel_tol and rel_printed <= rel_inverted:
        verdict = "printed"
        residual = rel_printed
    elif rel_inverted <= rel_tol:
        verdict = "inverted"
        residual = rel_inverted
    else:
        verdict = "neither"
        residual = min(rel_printed, rel_inverted)
    return {"n": n, "quadrature": value, "printed": printed,
            "inverted": inverted, "verdict": verdict, "residual": residual}


# -- completeness proxy ---------------------------------------------------

def completeness_residuals(params: Params, f: Evaluatable, n_max: int) -> List[float]:
    """Norms of the projection residual of f onto the first N members, N=1..n_max.

    The residual function is evaluated pointwise and re-integrated, so
    the sequence is non-increasing up to quadrature noise even when the
    computed members are only numerically orthogonal.
    """
    spec = family_weight(params)
    members = [x1_poly(params, n).poly.to_float() for n in range(1, n_max + 1)]
    fe = as_array_function(f)
    coeffs = []
    norms2 = []
    for p in members:
        norms2.append(quad_value(p, p, spec))
        coeffs.append(quad_value(fe, p, spec) / norms2[-1])
    evaluators = [as_array_function(p) for p in members]
    out = []
    for big_n in range(1, n_max + 1):
        def residual(x: np.ndarray, big_n=big_n) -> np.ndarray:
            acc = np.asarray(fe(x), dtype=float) + np.zeros_like(x)
            for c, pe in zip(coeffs[:big_n], evaluators[:big_n]):
                acc = acc - c * pe(x)
            return acc

        out.append(math.sqrt(max(quad_value(residual, residual, spec), 0.0)))
    return out
