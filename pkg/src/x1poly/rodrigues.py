"""Rodrigues-type construction and three-term recurrences.

The iterated first-order construction never evaluates the transcendental
weight: every step works with weight *ratios* and the exact logarithmic
derivative, both rational functions, so equality with the reference
construction is decidable exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .core import (JacobiParams, LaguerreParams, Params, x1_jacobi,
                   x1_laguerre)
from .operators import WeightSpec, family_weight
from .polyalg import EXACT, Polynomial, RationalFunction


@dataclass(frozen=True)
class WeightedRational:
    """rat(x) * W(x) for a base weight W, closed under differentiation."""
    rat: RationalFunction
    base: WeightSpec

    def differentiate(self) -> "WeightedRational":
        if self.base.logderiv is None:
            raise ValueError("base weight has no exact log-derivative")
        return WeightedRational(
            self.rat.derivative() + self.rat * self.base.logderiv, self.base)

    def times(self, factor: RationalFunction) -> "WeightedRational":
        return WeightedRational(self.rat * factor, self.base)


def rodrigues_jacobi(params: JacobiParams, n: int) -> Polynomial:
    """Degree-n X1-Jacobi member through the iterated-derivative pipeline.

    Seeds with (x - b_n)^2 times the exact ratio of the (n-1)-shifted
    weight to the base weight, applies the n-1 first-order factors, then
    strips (x - b_1) and the scale (-2)^n (n-1)!.
    """
    if n < 1:
        raise ValueError("the family starts at degree 1")
    if params.backend != EXACT:
        raise ValueError("the pipeline is exact-backend only")
    a, b = Fraction(params.a), Fraction(params.b)

    def b_j(j: int) -> Fraction:
        return b + j / a

    def x_minus(r) -> Polynomial:
        return Polynomial([-r, 1])

    base = family_weight(params)
    # ratio of the (n-1)-shifted weight to the base weight
    ratio = RationalFunction(
        (Polynomial([1, -1]) * Polynomial([1, 1])) ** (n - 1)
        * x_minus(b_j(0)) ** 2,
        x_minus(b_j(n - 1)) ** 2)
    work = WeightedRational(RationalFunction(x_minus(b_j(n)) ** 2) * ratio, base)
    for j in range(n - 1, 0, -1):
        factor = RationalFunction(
            x_minus(b_j(j)) ** 2, x_minus(b_j(j - 1)) * x_minus(b_j(j + 1)))
        work = work.times(factor).differentiate()
    result = work.rat / RationalFunction(x_minus(b_j(1)))
    poly = result.as_polynomial()
    if poly is None:
        raise AssertionError("pipeline output failed the polynomial certificate")
    scale = Fraction((-2) ** n * math.factorial(n - 1))
    return poly * (1 / scale)


def rodrigues_laguerre(params: LaguerreParams, n: int) -> Polynomial:
    """Degree-n X1-Laguerre member through the iterated-derivative pipeline."""
    if n < 1:
        raise ValueError("the family starts at degree 1")
    if params.backend != EXACT:
        raise ValueError("the pipeline is exact-backend only")
    k = Fraction(params.k)

    def x_plus(r) -> Polynomial:
        return Polynomial([r, 1])

    base = family_weight(params)
    ratio = RationalFunction(
        Polynomial.x() ** (n - 1) * x_plus(k) ** 2,
        x_plus(k + n - 1) ** 2)
    work = WeightedRational(RationalFunction(x_plus(k + n) ** 2) * ratio, base)
    for j in range(n - 1, 0, -1):
        factor = RationalFunction(
            x_plus(k + j) ** 2, x_plus(k + j - 1) * x_plus(k + j + 1))
        work = work.times(factor).differentiate()
    result = work.rat / RationalFunction(x_plus(k + 1))
    poly = result.as_polynomial()
    if poly is None:
        raise AssertionError("pipeline output failed the polynomial certificate")
    return poly * Fraction(-1, math.factorial(n - 1))


def rodrigues_member(params: Params, n: int) -> Polynomial:
    if isinstance(params, JacobiParams):
        return rodrigues_jacobi(params, n)
    return rodrigues_laguerre(params, n)


# -- three-term recurrences --------------------------------------------

def laguerre_recurrence_residual(params: LaguerreParams, n: int) -> Polynomial:
    """Residual of the Laguerre three-term relation with polynomial coefficients."""
    if n < 1:
        raise ValueError("n >= 1")
    k = Fraction(params.k)
    sq = Polynomial([k, 1]) ** 2
    m0 = x1_laguerre(params, n).poly
    m1 = x1_laguerre(params, n + 1).poly
    m2 = x1_laguerre(params, n + 2).poly
    coef2 = (sq * (n + k) - Polynomial([k])) * (n + 1)
    coef1 = (sq * Polynomial([-2 * n - k - 1, 1]) + Polynomial([2 * k])) * (n + k)
    coef0 = (sq * (n + k + 1) - Polynomial([k])) * (n + k - 1)
    return coef2 * m2 + coef1 * m1 + coef0 * m0


def laguerre_bridge_residual(params: LaguerreParams, n: int) -> Polynomial:
    """Residual of the intermediate relation whose right side is k * L_n^{(k)}."""
    from .classical import laguerre_poly
    if n < 1:
        raise ValueError("n >= 1")
    k = Fraction(params.k)
    m0 = x1_laguerre(params, n).poly
    m1 = x1_laguerre(params, n + 1).poly
    m2 = x1_laguerre(params, n + 2).poly
    lhs = (m2 * ((n + 1) * (n + k))
           + m1 * Polynomial([-2 * n - k - 1, 1]) * (n + k)
           + m0 * ((n + k - 1) * (n + k + 1)))
    return lhs - laguerre_poly(k, n, EXACT) * k


def _printed_jacobi_coefficients(params: JacobiParams, n: int) -> Tuple[Polynomial, Polynomial, Polynomial]:
    """Coefficient triple of the printed Jacobi three-term relation."""
    alpha, beta = Fraction(params.alpha), Fraction(params.beta)
    a, b = Fraction(params.a), Fraction(params.b)
    s = alpha + beta
    f_next = (n + 1) * (s + n + 1) / ((s + 2 * n + 1) * (s + 2 * n + 2))
    g_hat = (n + alpha) * (n + beta) / ((s + 2 * n) * (s + 2 * n + 2))
    h_hat = (n - 1 + alpha) * (n - 1 + beta) / ((s + 2 * n) * (s + 2 * n + 1))
    sq = Polynomial([-b, 1]) ** 2
    disc = Polynomial([b * b - 1])
    coef2 = (disc - sq * ((alpha + n) * (beta + n))) * f_next
    coef1 = ((disc + sq * (a * a - 1)) * (-2 * b * g_hat)
             + Polynomial.x() * sq * ((alpha + n) * (beta + n) / Fraction(2)))
    coef0 = (disc - sq * ((alpha + n + 1) * (beta + n + 1))) * h_hat
    return coef2, coef1, coef0


def _nullspace(rows: List[List[Fraction]], ncols: int) -> List[List[Fraction]]:
    """Basis of the solution space of rows . t = 0 over the rationals."""
    work = [row[:] for row in rows]
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        pv = work[r][c]
        work[r] = [v / pv for v in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [u - f * v for u, v in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -work[i][free]
        basis.append(vec)
    return basis


def annihilating_coefficients(polys: Sequence[Polynomial],
                              degree_bounds: Sequence[int]) -> List[Tuple[Polynomial, ...]]:
    """Basis of polynomial coefficient tuples (c_1..c_m) with sum c_i p_i = 0.

    Each c_i is constrained to the given degree bound; the system is
    solved exactly over the rationals.
    """
    sizes = [d + 1 for d in degree_bounds]
    ncols = sum(sizes)
    max_deg = max(p.degree + d for p, d in zip(polys, degree_bounds))
    rows = []
    for m in range(max_deg + 1):
        row = []
        for p, d in zip(polys, degree_bounds):
            for i in range(d + 1):
                row.append(Fraction(p.coefficient(m - i)) if 0 <= m - i else Fraction(0))
        rows.append(row)
    basis = _nullspace(rows, ncols)
    out = []
    for vec in basis:
        coeffs = []
        at = 0
        for size in sizes:
            coeffs.append(Polynomial(vec[at:at + size]))
            at += size
        out.append(tuple(coeffs))
    return out


def jacobi_recurrence_check(params: JacobiParams, n: int) -> dict:
    """Check the printed Jacobi three-term relation, reconciling typos.

    If the printed coefficient rows do not annihilate three consecutive
    members, the unique corrected rows (with the degree-(n+2) row pinned
    to the printed one) are solved for exactly and the deltas recorded.
    """
    if n < 1:
        raise ValueError("n >= 1")
    p0 = x1_jacobi(params, n).poly
    p1 = x1_jacobi(params, n + 1).poly
    p2 = x1_jacobi(params, n + 2).poly
    coef2, coef1, coef0 = _printed_jacobi_coefficients(params, n)
    residual = coef2 * p2 + coef1 * p1 + coef0 * p0
    report = {
        "printed_ok": residual.is_zero(),
        "printed_residual": residual,
        "coefficients": (coef2, coef1, coef0),
    }
    basis = annihilating_coefficients([p2, p1, p0], [2, 3, 2])
    report["annihilator_dimension"] = len(basis)
    if residual.is_zero():
        return report
    # pin the P_{n+2} row to the printed one and solve for the other two
    rhs = coef2 * p2
    target_deg = max(rhs.degree, p1.degree + 3, p0.degree + 2)
    rows = []
    for m in range(target_deg + 1):
        row = []
        for p, d in ((p1, 3), (p0, 2)):
            for i in range(d + 1):
                row.append(Fraction(p.coefficient(m - i)) if 0 <= m - i else Fraction(0))
        row.append(Fraction(rhs.coefficient(m)))  # augmented column
        rows.append(row)
    solution = _solve_augmented(rows, 7)
    if solution is None:
        report["reconciled"] = None
        report["note"] = "no relation with the printed leading row exists"
        return report
    corr1 = Polynomial([-v for v in solution[0:4]])
    corr0 = Polynomial([-v for v in solution[4:7]])
    check = coef2 * p2 + corr1 * p1 + corr0 * p0
    if not check.is_zero():
        raise AssertionError("reconciled coefficients failed to annihilate")
    report["reconciled"] = (coef2, corr1, corr0)
    report["delta"] = (Polynomial.zero(), corr1 - coef1, corr0 - coef0)
    return report


def _solve_augmented(rows: List[List[Fraction]], ncols: int) -> Optional[List[Fraction]]:
    """Unique solution of an augmented system A t = b, or None.

    rows carry the augmented column last; returns None when the system
    is inconsistent or underdetermined.
    """
    work = [row[:] for row in rows]
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        pv = work[r][c]
        work[r] = [v / pv for v in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [u - f * v for u, v in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    for i in range(r, len(work)):
        if work[i][ncols] != 0:
            return None  # inconsistent
    if len(pivots) < ncols:
        return None  # underdetermined
    solution = [Fraction(0)] * ncols
    for i, pc in enumerate(pivots):
        solution[pc] = work[i][ncols]
    return solution


def recurrence_forward_member(params: Params, n: int) -> Optional[Polynomial]:
    """Degree-(n+2) member solved forward from the validated recurrence.

    Returns None when the leading coefficient row is the zero polynomial
    (division impossible) or the exact division leaves a remainder.
    """
    if isinstance(params, LaguerreParams):
        k = Fraction(params.k)
        sq = Polynomial([k, 1]) ** 2
        coef2 = (sq * (n + k) - Polynomial([k])) * (n + 1)
        coef1 = (sq * Polynomial([-2 * n - k - 1, 1]) + Polynomial([2 * k])) * (n + k)
        coef0 = (sq * (n + k + 1) - Polynomial([k])) * (n + k - 1)
        m0 = x1_laguerre(params, n).poly
        m1 = x1_laguerre(params, n + 1).poly
    else:
        check = jacobi_recurrence_check(params, n)
        coef2, coef1, coef0 = (check["coefficients"] if check["printed_ok"]
                               else check["reconciled"])
        m0 = x1_jacobi(params, n).poly
        m1 = x1_jacobi(params, n + 1).poly
    if coef2.is_zero():
        return None
    num = -(coef1 * m1 + coef0 * m0)
    quot, rem = num.divmod(coef2)
    if not rem.is_zero():
        return None
    return quot
