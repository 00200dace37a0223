"""Macaulay representations, the growth operator and Gotzmann numbers."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial

from .budget import DEFAULT_MAX_GOTZMANN_TERMS
from .errors import NotHilbertPolynomial
from .polynomial import NumericalPolynomial


@dataclass(frozen=True)
class MacaulayRep:
    """``alpha = sum_j C(kappas[d - j], j)`` with strictly decreasing kappas.

    ``kappas`` is ``(kappa(d), kappa(d-1), ..., kappa(1))``.
    """

    d: int
    kappas: tuple[int, ...]

    @property
    def value(self) -> int:
        return sum(comb(k, j) for k, j in zip(self.kappas, range(self.d, 0, -1)))

    def growth(self) -> int:
        return sum(comb(k + 1, j + 1) for k, j in zip(self.kappas, range(self.d, 0, -1)))


def _largest_kappa(alpha: int, j: int) -> int:
    """Largest ``k`` with ``C(k, j) <= alpha``; at least ``j - 1``."""
    lo = j - 1
    if comb(j, j) > alpha:
        return lo
    hi = j
    while comb(hi, j) <= alpha:
        lo, hi = hi, 2 * hi
    # invariant: C(lo, j) <= alpha < C(hi, j)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if comb(mid, j) <= alpha:
            lo = mid
        else:
            hi = mid
    return lo


def macaulay_rep(alpha: int, d: int) -> MacaulayRep:
    """The unique ``d``-th Macaulay representation of ``alpha``.

    ``alpha = 0`` gives ``kappa(j) = j - 1`` for every ``j``, all terms zero.
    """
    if d <= 0:
        raise ValueError(f"d must be a positive integer, got {d}")
    if alpha < 0:
        raise ValueError(f"alpha must be non-negative, got {alpha}")
    kappas = []
    rest = alpha
    for j in range(d, 0, -1):
        k = _largest_kappa(rest, j)
        kappas.append(k)
        rest -= comb(k, j)
    assert rest == 0
    return MacaulayRep(d, tuple(kappas))


def macaulay_growth(alpha: int, d: int) -> int:
    """``alpha^<d>``: shift every binomial of the representation up by one."""
    return macaulay_rep(alpha, d).growth()


# ---------------------------------------------------------------------------
# Gotzmann representation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GotzmannRep:
    """``P(t) = sum_{i=1}^r C(t + a_i - i + 1, a_i)`` with ``a_1 >= ... >= a_r >= 0``."""

    degrees: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.degrees)

    def polynomial(self) -> NumericalPolynomial:
        out = NumericalPolynomial.constant(1, 0)
        for i, a in enumerate(self.degrees, start=1):
            out = out + NumericalPolynomial.binomial(1, 0, a - i + 1, a)
        return out

    def evaluate(self, t: int) -> int:
        return sum(_binom_poly_at(t + a - i + 1, a) for i, a in enumerate(self.degrees, start=1))


def _binom_poly_at(x: int, k: int) -> int:
    """``C(x, k)`` as a polynomial in ``x`` (valid for negative ``x`` too)."""
    num = 1
    for j in range(k):
        num *= x - j
    return num // factorial(k)


def gotzmann_representation(
    poly: NumericalPolynomial, max_terms: int = DEFAULT_MAX_GOTZMANN_TERMS
) -> GotzmannRep:
    """Greedy Gotzmann representation of a univariate Hilbert polynomial.

    Each step takes ``a_i`` equal to the degree of the remainder and
    subtracts ``C(t + a_i - i + 1, a_i)``.  The remainder must keep a positive
    leading coefficient and a degree no larger than ``a_{i-1}``.
    """
    if poly.nvars != 1:
        raise ValueError("Gotzmann representations are for univariate polynomials")
    rest = poly
    degrees: list[int] = []
    while not rest.is_zero():
        a = rest.degree()
        if rest.leading_coefficient() < 0:
            raise NotHilbertPolynomial(
                f"{poly.text()} is not a Hilbert polynomial (remainder {rest.text()} after {len(degrees)} terms)"
            )
        if degrees and a > degrees[-1]:
            raise NotHilbertPolynomial(f"{poly.text()} is not a Hilbert polynomial")
        if len(degrees) >= max_terms:
            raise NotHilbertPolynomial(
                f"{poly.text()}: Gotzmann representation exceeds {max_terms} terms"
            )
        i = len(degrees) + 1
        if a == 0:
            # constant remainder c: c more terms C(t - i + 1, 0) = 1
            c = rest.leading_coefficient()
            if c.denominator != 1:
                raise NotHilbertPolynomial(f"{poly.text()} is not integer valued")
            count = int(c)
            if len(degrees) + count > max_terms:
                raise NotHilbertPolynomial(
                    f"{poly.text()}: Gotzmann representation exceeds {max_terms} terms"
                )
            degrees.extend([0] * count)
            break
        degrees.append(a)
        rest = rest - NumericalPolynomial.binomial(1, 0, a - i + 1, a)
    return GotzmannRep(tuple(degrees))


def gotzmann_number(poly: NumericalPolynomial, max_terms: int = DEFAULT_MAX_GOTZMANN_TERMS) -> int:
    """Number of terms ``r`` in the Gotzmann representation of ``poly``."""
    return gotzmann_representation(poly, max_terms).r


def min_certificate_point_2d(poly: NumericalPolynomial, d1: int) -> tuple[int, int]:
    """``(d1, gotzmann_number(P(d1, t)))`` for a bivariate Hilbert polynomial."""
    if poly.nvars != 2:
        raise ValueError("expected a polynomial in two variables")
    if d1 < 0:
        raise ValueError("d1 must be non-negative")
    return (d1, gotzmann_number(poly.specialize(0, d1)))
