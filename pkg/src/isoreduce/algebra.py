"""Exact rational functions of lambda over the Gaussian rationals.

Three layers:

* :class:`GaussianRational` -- a + b*i with rational a, b.  Real values are
  carried as plain :class:`fractions.Fraction` internally; arithmetic on a
  GaussianRational whose imaginary part cancels returns a Fraction, so the
  common all-real case never pays for the complex wrapper.
* :class:`Polynomial` -- dense, lowest degree first, no trailing zeros.
* :class:`RatFunc` -- ``num/den`` in canonical form: gcd-free, monic
  denominator, zero is ``0/1``.  Canonical forms make equality structural.

:func:`roots` extracts numeric roots of an exact polynomial: an exact
square-free decomposition fixes multiplicities, companion-matrix eigenvalues
give the roots of each square-free part, Newton steps polish them.
"""

from __future__ import annotations

import numbers
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import DivisionByZeroFunction, PoleError, ZeroDenominator, ZeroPolynomial

__all__ = [
    "GaussianRational",
    "Polynomial",
    "RatFunc",
    "Root",
    "LAMBDA",
    "normalize",
    "arith",
    "evaluate",
    "roots",
    "poly_gcd",
    "squarefree_decomposition",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------

class GaussianRational:
    """An exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            re, im = re.re, re.im + Fraction(im)
        self.re = Fraction(re)
        self.im = Fraction(im)

    @property
    def re_num(self) -> int:
        return self.re.numerator

    @property
    def re_den(self) -> int:
        return self.re.denominator

    @property
    def im_num(self) -> int:
        return self.im.numerator

    @property
    def im_den(self) -> int:
        return self.im.denominator

    def is_real(self) -> bool:
        return self.im == 0

    def conjugate(self):
        return _mk(self.re, -self.im)

    def __add__(self, other):
        o = _gauss_parts(other)
        if o is None:
            return NotImplemented
        return _mk(self.re + o[0], self.im + o[1])

    __radd__ = __add__

    def __sub__(self, other):
        o = _gauss_parts(other)
        if o is None:
            return NotImplemented
        return _mk(self.re - o[0], self.im - o[1])

    def __rsub__(self, other):
        o = _gauss_parts(other)
        if o is None:
            return NotImplemented
        return _mk(o[0] - self.re, o[1] - self.im)

    def __mul__(self, other):
        o = _gauss_parts(other)
        if o is None:
            return NotImplemented
        a, b = self.re, self.im
        c, d = o
        return _mk(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _gauss_parts(other)
        if o is None:
            return NotImplemented
        c, d = o
        n = c * c + d * d
        if n == 0:
            raise ZeroDivisionError("division by zero")
        a, b = self.re, self.im
        return _mk((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        o = _gauss_parts(other)
        if o is None:
            return NotImplemented
        return GaussianRational(*o) / self

    def __neg__(self):
        return _mk(-self.re, -self.im)

    def __pos__(self):
        return self

    def __abs__(self):
        return abs(complex(self))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = _gauss_parts(other)
        if o is None:
            return NotImplemented
        return self.re == o[0] and self.im == o[1]

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def _gauss_parts(x):
    if isinstance(x, GaussianRational):
        return x.re, x.im
    if isinstance(x, (int, Fraction)):
        return Fraction(x), _ZERO
    if isinstance(x, complex):
        return Fraction(x.real), Fraction(x.imag)
    if isinstance(x, float):
        return Fraction(x), _ZERO
    return None


def _mk(re: Fraction, im: Fraction):
    if im == 0:
        return re
    g = GaussianRational.__new__(GaussianRational)
    g.re = re
    g.im = im
    return g


def to_scalar(x):
    """Coerce int/Fraction/float/complex/GaussianRational to the internal
    scalar (Fraction when real, GaussianRational otherwise)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, GaussianRational):
        return _mk(x.re, x.im)
    parts = _gauss_parts(x)
    if parts is None:
        if isinstance(x, numbers.Rational):
            return Fraction(x.numerator, x.denominator)
        raise TypeError(f"cannot use {type(x).__name__} as a coefficient")
    return _mk(*parts)


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

def _strip(cs: list) -> tuple:
    n = len(cs)
    while n and not cs[n - 1]:
        n -= 1
    return tuple(cs[:n])


class Polynomial:
    """Polynomial in lambda, coefficients lowest degree first.

    The zero polynomial has no coefficients and degree -1.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coefficients: Iterable = ()):
        self._c = _strip([to_scalar(c) for c in coefficients])
        self._hash = None

    @classmethod
    def _raw(cls, cs: tuple) -> "Polynomial":
        p = cls.__new__(cls)
        p._c = cs
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c=1) -> "Polynomial":
        return cls([0] * degree + [c])

    @property
    def coefficients(self) -> tuple:
        """Coefficients as GaussianRational values, lowest degree first."""
        return tuple(GaussianRational(c) for c in self._c)

    @property
    def coeffs(self) -> tuple:
        """Internal scalars (Fraction or GaussianRational)."""
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    @property
    def leading(self):
        return self._c[-1] if self._c else _ZERO

    def is_zero(self) -> bool:
        return not self._c

    def is_constant(self) -> bool:
        return len(self._c) <= 1

    def is_one(self) -> bool:
        return len(self._c) == 1 and self._c[0] == 1

    def is_real(self) -> bool:
        return all(isinstance(c, Fraction) for c in self._c)

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._c == other._c
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self._c == Polynomial.constant(other)._c
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._c)
        return self._hash

    def __repr__(self):
        return f"Polynomial({list(self._c)!r})"

    def __neg__(self):
        return Polynomial._raw(tuple(-c for c in self._c))

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Polynomial._raw(_strip(out))

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        a, b = self._c, other._c
        if not a or not b:
            return Polynomial._raw(())
        if len(b) == 1:
            k = b[0]
            return Polynomial._raw(tuple(c * k for c in a))
        if len(a) == 1:
            k = a[0]
            return Polynomial._raw(tuple(k * c for c in b))
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Polynomial._raw(_strip(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial._raw((_ONE,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        if not other._c:
            raise ZeroDivisionError("polynomial division by zero")
        b = other._c
        db = len(b) - 1
        lead = b[-1]
        r = list(self._c)
        if len(r) <= db:
            return Polynomial._raw(()), self
        q = [_ZERO] * (len(r) - db)
        inv_lead = 1 / lead
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if not c:
                continue
            c = c * inv_lead
            q[k - db] = c
            for j in range(db + 1):
                r[k - db + j] = r[k - db + j] - c * b[j]
        return Polynomial._raw(_strip(q)), Polynomial._raw(_strip(r[:db]))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def scale(self, k) -> "Polynomial":
        k = to_scalar(k)
        if not k:
            return Polynomial._raw(())
        return Polynomial._raw(tuple(c * k for c in self._c))

    def monic(self) -> "Polynomial":
        if not self._c or self._c[-1] == 1:
            return self
        inv = 1 / self._c[-1]
        return Polynomial._raw(tuple(c * inv for c in self._c))

    def derivative(self) -> "Polynomial":
        return Polynomial._raw(_strip([c * k for k, c in enumerate(self._c)][1:]))

    def __call__(self, x):
        """Exact Horner evaluation at a scalar."""
        acc = _ZERO
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def to_complex(self) -> np.ndarray:
        return np.array([complex(c) for c in self._c], dtype=complex)


def _as_poly(x):
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction, GaussianRational)):
        return Polynomial.constant(x)
    return None


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd; gcd(0, 0) is 0."""
    while b._c:
        a, b = b, a % b
    return a.monic()


def squarefree_decomposition(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: monic square-free factors with multiplicities.

    The product of ``f**k`` over the result equals ``p.monic()``.
    """
    if p.is_zero():
        raise ZeroPolynomial("square-free decomposition of the zero polynomial")
    f = p.monic()
    if f.degree < 1:
        return []
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f // a
    c = df // a
    d = c - b.derivative()
    out = []
    k = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a, k))
        b = b // a
        c = d // a
        d = c - b.derivative()
        k += 1
    return out


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------

_P_ZERO = Polynomial._raw(())
_P_ONE = Polynomial._raw((_ONE,))


class RatFunc:
    """Canonical rational function ``num/den`` in lambda.

    Build with :func:`normalize`, :meth:`constant`, or arithmetic on
    existing values; instances are immutable.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        f = normalize(_coerce_poly(num), _P_ONE if den is None else _coerce_poly(den))
        self.num = f.num
        self.den = f.den
        self._hash = None

    @classmethod
    def _raw(cls, num: Polynomial, den: Polynomial) -> "RatFunc":
        f = cls.__new__(cls)
        f.num = num
        f.den = den
        f._hash = None
        return f

    @classmethod
    def constant(cls, c) -> "RatFunc":
        return cls._raw(Polynomial.constant(c), _P_ONE)

    @classmethod
    def from_poly(cls, p: Polynomial) -> "RatFunc":
        return cls._raw(p, _P_ONE)

    def is_zero(self) -> bool:
        return not self.num._c

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.degree <= 0

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_proper(self) -> bool:
        """deg(num) <= deg(den): membership in the subfield closed under
        isospectral reduction."""
        return self.num.degree <= self.den.degree

    def __bool__(self):
        return bool(self.num._c)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        o = _as_ratfunc(other)
        if o is None:
            return NotImplemented
        return self == o

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        from .weightlang import print_weight

        return f"RatFunc({print_weight(self)!r})"

    def __str__(self):
        from .weightlang import print_weight

        return print_weight(self)

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __add__(self, other):
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        return _add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        return _add(self, -other)

    def __rsub__(self, other):
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        return _add(other, -self)

    def __mul__(self, other):
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        return _mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        return _mul(self, other.inverse())

    def __rtruediv__(self, other):
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        return _mul(other, self.inverse())

    def inverse(self) -> "RatFunc":
        if not self.num._c:
            raise DivisionByZeroFunction("inverse of the zero function")
        lead = self.num.leading
        if lead == 1:
            return RatFunc._raw(self.den, self.num)
        inv = 1 / lead
        return RatFunc._raw(self.den.scale(inv), self.num.scale(inv))

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc._raw(self.num ** n, self.den ** n)

    def eval_exact(self, x):
        """Exact value at a Gaussian-rational point."""
        x = to_scalar(x)
        d = self.den(x)
        if not d:
            raise PoleError(f"pole at {x}")
        return self.num(x) / d

    def __call__(self, z):
        return evaluate(self, z)


def _coerce_poly(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    return Polynomial.constant(x)


def _as_ratfunc(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, Polynomial):
        return RatFunc._raw(x, _P_ONE)
    if isinstance(x, (int, Fraction, GaussianRational)):
        return RatFunc.constant(x)
    return None


def normalize(num: Polynomial, den: Polynomial) -> RatFunc:
    """Canonical representative of num/den."""
    if den.is_zero():
        raise ZeroDenominator("denominator is identically zero")
    if num.is_zero():
        return RatFunc._raw(_P_ZERO, _P_ONE)
    if den.degree > 0 and num.degree >= 0:
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num // g
            den = den // g
    lead = den.leading
    if lead != 1:
        inv = 1 / lead
        num = num.scale(inv)
        den = den.scale(inv)
    return RatFunc._raw(num, den)


def _add(a: RatFunc, b: RatFunc) -> RatFunc:
    if not a.num._c:
        return b
    if not b.num._c:
        return a
    if a.den == b.den:
        if a.den.is_one():
            return RatFunc._raw(a.num + b.num, _P_ONE)
        return normalize(a.num + b.num, a.den)
    g = poly_gcd(a.den, b.den)
    if g.is_one():
        return normalize(a.num * b.den + b.num * a.den, a.den * b.den)
    bq = b.den // g
    return normalize(a.num * bq + b.num * (a.den // g), a.den * bq)


def _mul(a: RatFunc, b: RatFunc) -> RatFunc:
    if not a.num._c or not b.num._c:
        return RatFunc._raw(_P_ZERO, _P_ONE)
    if a.den.is_one() and b.den.is_one():
        return RatFunc._raw(a.num * b.num, _P_ONE)
    # cross-cancel so the product of the reduced parts is already gcd-free
    an, ad, bn, bd = a.num, a.den, b.num, b.den
    g1 = poly_gcd(an, bd)
    if g1.degree > 0:
        an, bd = an // g1, bd // g1
    g2 = poly_gcd(bn, ad)
    if g2.degree > 0:
        bn, ad = bn // g2, ad // g2
    num, den = an * bn, ad * bd
    lead = den.leading
    if lead != 1:
        inv = 1 / lead
        num, den = num.scale(inv), den.scale(inv)
    return RatFunc._raw(num, den)


def arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    """Field operation by name: one of add, sub, mul, div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


LAMBDA = RatFunc._raw(Polynomial._raw((_ZERO, _ONE)), _P_ONE)


def evaluate(f: RatFunc, z) -> complex:
    """Value of f at z: exact rational evaluation, one rounding at the end.

    Floats are binary rationals, so z is converted exactly.
    """
    return complex(f.eval_exact(to_scalar(z)))


# ---------------------------------------------------------------------------
# Numeric roots
# ---------------------------------------------------------------------------

class Root(NamedTuple):
    value: complex
    multiplicity: int


def _companion_roots(p: Polynomial) -> np.ndarray:
    """Eigenvalues of the companion matrix of a square-free polynomial,
    polished by Newton iteration on the original coefficients."""
    if p.degree == 1:
        c0, c1 = p.coeffs
        return np.array([complex(-c0 / c1)])
    c = p.monic().to_complex()
    n = len(c) - 1
    comp = np.zeros((n, n), dtype=complex)
    comp[1:, :-1] = np.eye(n - 1)
    comp[:, -1] = -c[:-1]
    rs = np.linalg.eigvals(comp)
    hi = c[::-1]
    dhi = np.polyder(hi)
    for k, r in enumerate(rs):
        for _ in range(8):
            d = np.polyval(dhi, r)
            if d == 0:
                break
            step = np.polyval(hi, r) / d
            r = r - step
            if abs(step) <= 1e-15 * max(1.0, abs(r)):
                break
        rs[k] = r
    return rs


def roots(p: Polynomial, tol: float = 1e-6) -> list[Root]:
    """Roots of p with multiplicity; roots closer than ``tol`` are merged.

    Multiplicities come from an exact square-free decomposition, so repeated
    roots do not degrade numerically.  Sorted by (real, imag).
    """
    if p.is_zero():
        raise ZeroPolynomial("roots of the zero polynomial")
    raw: list[list] = []
    for factor, mult in squarefree_decomposition(p):
        for r in _companion_roots(factor):
            raw.append([complex(r), mult])
    clusters: list[list] = []
    for r, m in raw:
        for c in clusters:
            if abs(c[0] - r) <= tol:
                # multiplicity-weighted centroid
                total = c[1] + m
                c[0] = (c[0] * c[1] + r * m) / total
                c[1] = total
                break
        else:
            clusters.append([r, m])
    out = [Root(_clean(v), m) for v, m in clusters]
    out.sort(key=lambda r: (round(r.value.real, 9), round(r.value.imag, 9)))
    return out


def _clean(z: complex, eps: float = 1e-12) -> complex:
    re = 0.0 if abs(z.real) < eps else z.real
    im = 0.0 if abs(z.imag) < eps else z.imag
    return complex(re, im)


def expand_roots(rs: Sequence[Root]) -> list[complex]:
    """Flatten a root multiset into a list with repetitions."""
    return [r.value for r in rs for _ in range(r.multiplicity)]
