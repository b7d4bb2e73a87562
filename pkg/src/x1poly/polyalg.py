"""Scalar backends, dense univariate polynomials, rational functions.

Two scalar backends are supported and never mixed silently:

* ``"exact"`` -- arbitrary-precision rationals (``fractions.Fraction``),
  the default for construction and identity checks;
* ``"float"`` -- IEEE binary64, reserved for quadrature and root
  refinement.

Plain ints are accepted anywhere and coerced to the surrounding
backend.  Combining a Fraction-built value with a float-built value
raises :class:`BackendMismatchError` instead of coercing.

Polynomials are immutable dense coefficient tuples in ascending power
with trailing zeros stripped, so the leading coefficient is nonzero
unless the polynomial is the canonical zero (empty tuple, degree -1).

Rational functions exist on the exact backend only, where gcd
cancellation plus a monic denominator gives a unique canonical form.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Optional, Union

Scalar = Union[Fraction, float]

EXACT = "exact"
FLOAT = "float"


class BackendMismatchError(TypeError):
    """Raised when exact and float values meet in one operation."""


def backend_of(value) -> str:
    """Backend of a scalar; ints are reported as exact."""
    if isinstance(value, float):
        return FLOAT
    if isinstance(value, (Fraction, int)):
        return EXACT
    raise TypeError(f"not a supported scalar: {value!r}")


def as_scalar(value, backend: str) -> Scalar:
    if backend == EXACT:
        if isinstance(value, float):
            raise BackendMismatchError("float value in exact context")
        return Fraction(value)
    if backend == FLOAT:
        return float(value)
    raise ValueError(f"unknown backend {backend!r}")


def check_same_backend(*backends: str) -> str:
    first = backends[0]
    for b in backends[1:]:
        if b != first:
            raise BackendMismatchError(
                f"mixed scalar backends: {first} vs {b}")
    return first


def parse_scalar(text: str) -> Scalar:
    """Parse a command-line scalar.

    ``p/q`` and plain integers load into the exact backend; anything
    with a decimal point or exponent loads into the float backend.
    """
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    try:
        return Fraction(int(text))
    except ValueError:
        return float(text)


def scalar_to_str(value: Scalar) -> str:
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    return repr(value)


def _coerce_coeffs(values: Iterable, backend: Optional[str]):
    values = list(values)
    if backend is None:
        backend = EXACT
        for v in values:
            if isinstance(v, float):
                backend = FLOAT
            elif not isinstance(v, (Fraction, int)):
                raise TypeError(f"not a supported scalar: {v!r}")
        if backend == FLOAT and any(isinstance(v, Fraction) for v in values):
            raise BackendMismatchError(
                "coefficient list mixes Fraction and float")
    coeffs = [as_scalar(v, backend) for v in values]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs), backend


class Polynomial:
    """Dense univariate polynomial, coefficients in ascending power."""

    __slots__ = ("coeffs", "backend")

    def __init__(self, coeffs: Iterable = (), backend: Optional[str] = None):
        c, b = _coerce_coeffs(coeffs, backend)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "backend", b)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, backend: str = EXACT) -> "Polynomial":
        return cls((), backend)

    @classmethod
    def one(cls, backend: str = EXACT) -> "Polynomial":
        return cls((1,), backend)

    @classmethod
    def x(cls, backend: str = EXACT) -> "Polynomial":
        return cls((0, 1), backend)

    @classmethod
    def constant(cls, value, backend: Optional[str] = None) -> "Polynomial":
        if backend is None:
            backend = backend_of(value)
        return cls((value,), backend)

    @classmethod
    def linear(cls, constant, slope=1, backend: Optional[str] = None) -> "Polynomial":
        """slope*x + constant, e.g. ``linear(-b)`` is x - b."""
        return cls((constant, slope), backend)

    # -- basic queries -------------------------------------------------

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading_coefficient(self) -> Scalar:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coefficient(self, power: int) -> Scalar:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return as_scalar(0, self.backend)

    # -- arithmetic ----------------------------------------------------

    def _same(self, other: "Polynomial") -> None:
        if not isinstance(other, Polynomial):
            raise TypeError(f"expected Polynomial, got {other!r}")
        check_same_backend(self.backend, other.backend)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._same(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = out[i] + v
        return Polynomial(out, self.backend)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return Polynomial([-v for v in self.coeffs], self.backend)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._same(other)
            if self.is_zero() or other.is_zero():
                return Polynomial.zero(self.backend)
            zero = as_scalar(0, self.backend)
            out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return Polynomial(out, self.backend)
        # scalar scaling
        check_same_backend(self.backend, backend_of(other))
        s = as_scalar(other, self.backend)
        return Polynomial([v * s for v in self.coeffs], self.backend)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative polynomial power")
        out = Polynomial.one(self.backend)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def scale(self, s) -> "Polynomial":
        return self * s

    def derivative(self) -> "Polynomial":
        return Polynomial(
            [i * v for i, v in enumerate(self.coeffs)][1:], self.backend)

    def __call__(self, x):
        """Horner evaluation; the point must live in this backend."""
        check_same_backend(self.backend, backend_of(x))
        x = as_scalar(x, self.backend)
        acc = as_scalar(0, self.backend)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- structure -----------------------------------------------------

    def divmod(self, other: "Polynomial"):
        """Long division; exact on the exact backend."""
        self._same(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        zero = as_scalar(0, self.backend)
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial.zero(self.backend), self
        quot = [zero] * (dq + 1)
        lead = other.coeffs[-1]
        for i in range(dq, -1, -1):
            if len(rem) < len(other.coeffs) + i:
                continue
            coef = rem[len(other.coeffs) + i - 1] / lead
            if coef == 0:
                continue
            quot[i] = coef
            for j, b in enumerate(other.coeffs):
                rem[i + j] = rem[i + j] - coef * b
        return Polynomial(quot, self.backend), Polynomial(rem, self.backend)

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return self.divmod(other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return self.divmod(other)[1]

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        lead = self.leading_coefficient()
        return Polynomial([v / lead for v in self.coeffs], self.backend)

    def compose_neg_x(self) -> "Polynomial":
        """p(-x); used by the mirror map for a > 0 Jacobi root counting."""
        return Polynomial(
            [(-v if i % 2 else v) for i, v in enumerate(self.coeffs)],
            self.backend)

    def taylor_at(self, x0) -> tuple:
        """Coefficients of p expanded about x0 (repeated synthetic division)."""
        check_same_backend(self.backend, backend_of(x0))
        x0 = as_scalar(x0, self.backend)
        work = list(self.coeffs)
        out = []
        while work:
            carry = as_scalar(0, self.backend)
            quot = []
            for c in reversed(work):
                carry = carry * x0 + c
                quot.append(carry)
            out.append(quot.pop())
            work = list(reversed(quot))
        return tuple(out)

    def to_float(self) -> "Polynomial":
        return Polynomial([float(v) for v in self.coeffs], FLOAT)

    # -- dunder plumbing -------------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, Polynomial)
                and self.backend == other.backend
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.backend, self.coeffs))

    def __repr__(self) -> str:
        if self.is_zero():
            return "Polynomial(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            cs = scalar_to_str(c) if isinstance(c, Fraction) else repr(c)
            terms.append(cs if i == 0 else f"{cs}*x^{i}")
        return "Polynomial(" + " + ".join(terms) + ")"


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd by the Euclidean algorithm over rationals.

    Remainders are re-normalised to monic at every step, which keeps the
    rational coefficients from blowing up.
    """
    check_same_backend(p.backend, q.backend)
    if p.backend != EXACT:
        raise BackendMismatchError("polynomial gcd requires the exact backend")
    a, b = p, q
    while not b.is_zero():
        a, b = b, (a % b)
        if not b.is_zero():
            b = b.monic()
    if a.is_zero():
        return a
    return a.monic()


def squarefree_part(p: Polynomial) -> tuple:
    """(square-free part of p, True if p had a repeated factor)."""
    if p.degree <= 0:
        return p, False
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p, False
    return p // g, True


class RationalFunction:
    """Quotient of exact polynomials in gcd-cancelled, monic-denominator form."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Optional[Polynomial] = None):
        if den is None:
            den = Polynomial.one(num.backend)
        check_same_backend(num.backend, den.backend)
        if num.backend != EXACT:
            raise BackendMismatchError(
                "rational functions exist on the exact backend only")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not num.is_zero():
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
        else:
            den = Polynomial.one(EXACT)
        lead = den.leading_coefficient()
        if lead != 1:
            num = Polynomial([v / lead for v in num.coeffs], EXACT)
            den = den.monic()
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def from_poly(cls, p: Polynomial) -> "RationalFunction":
        return cls(p)

    @classmethod
    def zero(cls) -> "RationalFunction":
        return cls(Polynomial.zero(EXACT))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def as_polynomial(self) -> Optional[Polynomial]:
        """The quotient when the denominator divides exactly, else None."""
        if self.den.degree == 0:
            return self.num  # den is monic, hence exactly 1
        return None

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        other = _as_ratfun(other)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-_as_ratfun(other))

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __mul__(self, other) -> "RationalFunction":
        other = _as_ratfun(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other) -> "RationalFunction":
        other = _as_ratfun(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den)

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def __eq__(self, other) -> bool:
        return (isinstance(other, RationalFunction)
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        if self.den.degree == 0:
            return f"RationalFunction({self.num!r})"
        return f"RationalFunction({self.num!r} / {self.den!r})"


def _as_ratfun(v) -> RationalFunction:
    if isinstance(v, RationalFunction):
        return v
    if isinstance(v, Polynomial):
        return RationalFunction(v)
    if isinstance(v, (int, Fraction)):
        return RationalFunction(Polynomial.constant(Fraction(v)))
    raise TypeError(f"cannot treat {v!r} as a rational function")
