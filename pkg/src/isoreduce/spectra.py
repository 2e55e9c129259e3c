"""Characteristic determinants, spectra, and the determinant identity.

The spectrum of a graph is the multiset of roots of the canonical numerator
of det(M(λ) - λI); roots of the denominator are poles, not eigenvalues.

For a sequential elimination that removes v1, ..., vk with loop weights
w1, ..., wk at their removal times,

    det(M_G - λI) = det(R_S - λI) * prod_k (w_k - λ)

which :func:`verify_reduction_identity` checks exactly at sample points.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .algebra import LAMBDA, Polynomial, RatFunc, poly_gcd, roots, to_scalar
from .errors import DegenerateDeterminant, VerificationError
from .graph import Graph
from .reduction import eliminate

__all__ = [
    "SpectrumReport",
    "VerificationRecord",
    "char_det",
    "spectrum",
    "exact_det",
    "bareiss_det",
    "verify_reduction_identity",
]

DEFAULT_TOL = 1e-6


def _lcm(a: Polynomial, b: Polynomial) -> Polynomial:
    if a.is_one():
        return b
    if b.is_one():
        return a
    return (a * (b // poly_gcd(a, b))).monic()


def bareiss_det(rows: list[list[Polynomial]]) -> Polynomial:
    """Determinant of a square polynomial matrix by fraction-free
    (Bareiss) elimination; every division is exact."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return Polynomial.constant(1)
    sign = 1
    prev = Polynomial.constant(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            for r in range(k + 1, n):
                if not a[r][k].is_zero():
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return Polynomial()
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = piv * a[i][j] - aik * a[k][j]
                a[i][j] = num // prev if not prev.is_one() else num
            a[i][k] = Polynomial()
        prev = piv
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def char_det(g: Graph) -> RatFunc:
    """Canonical det(M_G(λ) - λI).

    Each row is cleared by the lcm of its denominators, the polynomial
    determinant is taken fraction-free, and the row multipliers are divided
    back out.
    """
    m = g.matrix()
    rows = []
    scale = Polynomial.constant(1)
    for i, row in enumerate(m):
        row = list(row)
        row[i] = row[i] - LAMBDA
        L = Polynomial.constant(1)
        for f in row:
            L = _lcm(L, f.den)
        rows.append([f.num * (L // f.den) for f in row])
        scale = scale * L
    return RatFunc(bareiss_det(rows), scale)


@dataclass(frozen=True)
class SpectrumReport:
    char_det: RatFunc
    eigenvalues: tuple  # of Root
    pole_roots: tuple  # of Root

    @property
    def multiset(self) -> list[complex]:
        return [r.value for r in self.eigenvalues for _ in range(r.multiplicity)]


def spectrum(g: Graph, tol: float = DEFAULT_TOL) -> SpectrumReport:
    """Eigenvalues of g: clustered roots of the numerator of char_det."""
    d = char_det(g)
    if d.is_zero():
        raise DegenerateDeterminant("det(M(λ) - λI) is identically zero")
    eig = tuple(roots(d.num, tol)) if d.num.degree > 0 else ()
    poles = tuple(roots(d.den, tol)) if d.den.degree > 0 else ()
    return SpectrumReport(d, eig, poles)


# ---------------------------------------------------------------------------
# Exact numeric determinants and the identity check
# ---------------------------------------------------------------------------

def exact_det(matrix: Sequence[Sequence]) -> object:
    """Determinant of a matrix of exact scalars by Gaussian elimination."""
    a = [[to_scalar(x) for x in row] for row in matrix]
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        p = next((r for r in range(k, n) if a[r][k]), None)
        if p is None:
            return Fraction(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        piv = a[k][k]
        det = det * piv
        inv = 1 / piv
        for i in range(k + 1, n):
            f = a[i][k] * inv
            if not f:
                continue
            for j in range(k + 1, n):
                a[i][j] = a[i][j] - f * a[k][j]
    return det


def _shifted_at(g: Graph, x) -> list[list]:
    """M_G(x) - xI with exact entries; PoleError if any weight has a pole."""
    rows = []
    for i, row in enumerate(g.matrix()):
        vals = [f.eval_exact(x) if f else Fraction(0) for f in row]
        vals[i] = vals[i] - x
        rows.append(vals)
    return rows


@dataclass(frozen=True)
class Sample:
    point: object
    lhs: object
    rhs: object

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class VerificationRecord:
    """Exact sample-point check of the determinant identity.

    ``factors`` lists ``(vertex, loop weight)`` in removal order; each
    contributes ``(loop weight - λ)`` to the right-hand side.
    """

    keep: tuple
    factors: tuple
    samples: tuple = field(default=())

    @property
    def verified(self) -> bool:
        return bool(self.samples) and all(s.equal for s in self.samples)

    def factor_functions(self) -> list[RatFunc]:
        return [w - LAMBDA for _, w in self.factors]


def _has_pole(fs, x) -> bool:
    return any(not f.den(x) for f in fs)


def _sample(g: Graph, r: Graph, factors: list, x) -> Sample:
    lhs = exact_det(_shifted_at(g, x))
    rhs = exact_det(_shifted_at(r, x))
    for f in factors:
        rhs = rhs * f.eval_exact(x)
    return Sample(x, lhs, rhs)


def verify_reduction_identity(
    g: Graph,
    S: Iterable,
    n_samples: int = 20,
    seed: int = 0,
    order: Optional[Sequence] = None,
    max_retries: int = 1000,
    jobs: int = 1,
) -> VerificationRecord:
    """Check det(M_G - λI) = det(R_S - λI) * prod(w_k - λ) exactly at
    ``n_samples`` random integer points in [-10^6, 10^6].

    Points where any weight involved has a pole are redrawn.  ``jobs > 1``
    evaluates samples in worker processes; results do not depend on it.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    elim = eliminate(g, S, order)
    r = elim.graph
    factors = [w - LAMBDA for _, w in elim.removed]
    watched = list(g.weights.values()) + list(r.weights.values()) + factors
    rng = random.Random(seed)
    points: list = []
    retries = 0
    while len(points) < n_samples:
        x = Fraction(rng.randint(-10**6, 10**6))
        if x in points:
            continue
        if _has_pole(watched, x):
            retries += 1
            if retries > max_retries:
                raise VerificationError("could not find sample points avoiding all poles")
            continue
        points.append(x)
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            samples = list(pool.map(_sample, [g] * len(points), [r] * len(points),
                                    [factors] * len(points), points))
    else:
        samples = [_sample(g, r, factors, x) for x in points]
    keep = tuple(v for v in g.labels if v in r)
    return VerificationRecord(keep, elim.removed, tuple(samples))
