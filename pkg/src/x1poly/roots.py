"""Real-root isolation over exact rationals and zero-location checks.

Sturm sequences give exact sign-change counts, so the location claims
(one root beyond the pole, the rest inside the orthogonality interval)
are certified, not approximated.  Refinement to float is bisection
followed by guarded Newton.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .core import JACOBI, Params, X1Poly
from .polyalg import EXACT, Polynomial, squarefree_part


def sturm_chain(p: Polynomial) -> List[Polynomial]:
    """Signed remainder sequence starting from (p, p')."""
    if p.backend != EXACT:
        raise ValueError("Sturm sequences require the exact backend")
    chain = [p, p.derivative()]
    while chain[-1].degree > 0:
        rem = chain[-2] % chain[-1]
        if rem.is_zero():
            break
        chain.append(-rem)
    if chain[-1].is_zero():
        chain.pop()
    return chain


def _variations(values) -> int:
    signs = [(v > 0) - (v < 0) for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _variations_at(chain: List[Polynomial], x: Fraction) -> int:
    return _variations([q(x) for q in chain])


def _variations_at_infinity(chain: List[Polynomial], positive: bool) -> int:
    values = []
    for q in chain:
        if q.is_zero():
            continue
        lead = q.leading_coefficient()
        if positive:
            values.append(lead)
        else:
            values.append(lead if q.degree % 2 == 0 else -lead)
    return _variations(values)


def count_real_roots(p: Polynomial, lo: Optional[Fraction] = None,
                     hi: Optional[Fraction] = None) -> int:
    """Number of distinct real roots in (lo, hi]; None endpoints mean +-infinity.

    The input is made square-free first, so multiple roots count once.
    """
    q, _ = squarefree_part(p)
    if q.degree < 1:
        return 0
    chain = sturm_chain(q)
    v_lo = (_variations_at_infinity(chain, positive=False) if lo is None
            else _variations_at(chain, Fraction(lo)))
    v_hi = (_variations_at_infinity(chain, positive=True) if hi is None
            else _variations_at(chain, Fraction(hi)))
    return v_lo - v_hi


def cauchy_bound(p: Polynomial) -> Fraction:
    """All real roots lie in [-bound, bound]."""
    if p.degree < 1:
        return Fraction(1)
    lead = abs(Fraction(p.leading_coefficient()))
    rest = max((abs(Fraction(c)) for c in p.coeffs[:-1]), default=Fraction(0))
    return 1 + rest / lead


def isolate_real_roots(p: Polynomial) -> List[Tuple[Fraction, Fraction]]:
    """Disjoint rational intervals (lo, hi], one distinct real root each."""
    q, _ = squarefree_part(p)
    if q.degree < 1:
        return []
    chain = sturm_chain(q)
    bound = cauchy_bound(q)

    def count(lo: Fraction, hi: Fraction) -> int:
        return _variations_at(chain, lo) - _variations_at(chain, hi)

    out: List[Tuple[Fraction, Fraction]] = []

    def split(lo: Fraction, hi: Fraction, found: int) -> None:
        if found == 0:
            return
        if found == 1:
            out.append((lo, hi))
            return
        mid = (lo + hi) / 2
        left = count(lo, mid)
        split(lo, mid, left)
        split(mid, hi, found - left)

    total = count(-bound, bound)
    split(-bound, bound, total)
    out.sort()
    return out


def refine_root(p: Polynomial, interval: Tuple[Fraction, Fraction],
                tol: float = 1e-12) -> float:
    """Float root from an isolating interval: bisection, then guarded Newton."""
    q, _ = squarefree_part(p)
    qf = q.to_float()
    dqf = qf.derivative()
    lo, hi = Fraction(interval[0]), Fraction(interval[1])
    s_hi = q(hi)
    if s_hi == 0:
        return float(hi)
    # exact bisection until the bracket is tight enough for Newton
    for _ in range(80):
        if float(hi - lo) < 1e-3 * (1 + abs(float(lo))):
            break
        mid = (lo + hi) / 2
        s_mid = q(mid)
        if s_mid == 0:
            return float(mid)
        if (s_mid > 0) == (s_hi > 0):
            hi = mid
        else:
            lo = mid
    x = 0.5 * (float(lo) + float(hi))
    flo, fhi = float(lo), float(hi)
    for _ in range(100):
        fx = qf(x)
        dfx = dqf(x)
        if dfx != 0:
            step = fx / dfx
            nxt = x - step
            if flo <= nxt <= fhi:
                if abs(step) < tol * (1 + abs(x)):
                    return nxt
                x = nxt
                continue
        # Newton escaped the bracket: fall back to a float bisection step
        if (qf(flo) > 0) == (fx > 0):
            flo = x
        else:
            fhi = x
        x = 0.5 * (flo + fhi)
        if fhi - flo < tol * (1 + abs(x)):
            return x
    return x


@dataclass(frozen=True)
class RootReport:
    family: str
    n: int
    total_real: int
    outside_count: int          # roots beyond the pole b
    inside_count: int           # roots in the orthogonality interval
    roots: Tuple[float, ...]
    intervals: Tuple[Tuple[Fraction, Fraction], ...]
    pole_value_nonzero: bool    # member(b) != 0, checked exactly
    mirrored: bool              # Jacobi a > 0 handled through x -> -x
    simple: bool                # no repeated factor found
    ok: bool


def zero_location_report(member: X1Poly) -> RootReport:
    """Exact root-location counts for one family member.

    Laguerre: one root below -k, the remaining n-1 at or above 0.
    Jacobi (taken in the a < 0 orientation, mirroring x -> -x first when
    a > 0, which swaps alpha and beta and negates b and c): one root
    below b and n-1 inside (-1, 1).
    """
    params = member.params
    poly = member.poly
    n = member.n
    mirrored = False
    if member.family == JACOBI and params.a > 0:
        params = params.mirrored()
        poly = poly.compose_neg_x()
        mirrored = True

    _, had_multiple = squarefree_part(poly)
    b = Fraction(params.b)
    pole_ok = poly(b) != 0

    total = count_real_roots(poly)
    below_pole = count_real_roots(poly, None, b)  # (-inf, b]
    if poly(b) == 0:
        below_pole -= 1
    if member.family == JACOBI:
        inside = count_real_roots(poly, Fraction(-1), Fraction(1))
        if poly(Fraction(1)) == 0:
            inside -= 1  # open interval; cannot occur for admissible parameters
    else:
        inside = count_real_roots(poly, Fraction(0), None)
        if poly(Fraction(0)) == 0:
            inside += 1  # the half-line is closed at 0

    intervals = tuple(isolate_real_roots(poly))
    refined = tuple(refine_root(poly, iv) for iv in intervals)
    ok = (total == n and below_pole == 1 and inside == n - 1
          and pole_ok and not had_multiple)
    return RootReport(member.family, n, total, below_pole, inside, refined,
                      intervals, pole_ok, mirrored, not had_multiple, ok)


def interlacing_probe(params: Params, n: int) -> dict:
    """Whether the interior roots of consecutive members interlace.

    Exploratory output only; no claim from the verified identities is
    attached to it.
    """
    from .core import x1_poly
    cur = zero_location_report(x1_poly(params, n))
    nxt = zero_location_report(x1_poly(params, n + 1))
    if params.family == JACOBI:
        inner_cur = sorted(r for r in cur.roots if -1 < r < 1)
        inner_nxt = sorted(r for r in nxt.roots if -1 < r < 1)
    else:
        inner_cur = sorted(r for r in cur.roots if r >= 0)
        inner_nxt = sorted(r for r in nxt.roots if r >= 0)
    interlaces = len(inner_nxt) == len(inner_cur) + 1 and all(
        inner_nxt[i] < inner_cur[i] < inner_nxt[i + 1]
        for i in range(len(inner_cur)))
    return {"n": n, "interlaces": interlaces,
            "inner_roots_n": inner_cur, "inner_roots_next": inner_nxt}
