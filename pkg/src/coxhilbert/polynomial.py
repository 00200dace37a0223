"""Integer-valued multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from .budget import Budget, resolve
from .errors import InterpolationError, ParseError, StabilizationError

Number = int | Fraction


def _frac(x: Any) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("boolean is not a coefficient")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot use {x!r} as an exact coefficient")


def _display_order(exps: tuple[int, ...]) -> tuple:
    return (-sum(exps), tuple(-x for x in exps))


@dataclass(frozen=True)
class NumericalPolynomial:
    """Polynomial in ``t1..ts`` stored in the monomial basis.

    ``terms`` holds ``(exponents, coefficient)`` pairs with no zero
    coefficients, in display order (graded, then lex with ``t1`` first).
    ``validated_offset`` is set by :func:`hilbert_polynomial`; it is metadata
    and does not take part in equality.
    """

    nvars: int
    terms: tuple[tuple[tuple[int, ...], Fraction], ...] = ()
    validated_offset: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.nvars < 1:
            raise ValueError("a polynomial needs at least one variable")
        merged: dict[tuple[int, ...], Fraction] = {}
        for exps, c in self.terms:
            exps = tuple(int(x) for x in exps)
            if len(exps) != self.nvars or any(x < 0 for x in exps):
                raise ValueError(f"bad exponent vector {exps} for {self.nvars} variables")
            merged[exps] = merged.get(exps, Fraction(0)) + _frac(c)
        clean = tuple(
            (k, v) for k, v in sorted(merged.items(), key=lambda kv: _display_order(kv[0])) if v
        )
        object.__setattr__(self, "terms", clean)

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_dict(cls, nvars: int, coeffs: Mapping[Sequence[int], Number]) -> NumericalPolynomial:
        return cls(nvars, tuple((tuple(k), _frac(v)) for k, v in coeffs.items()))

    @classmethod
    def constant(cls, nvars: int, c: Number) -> NumericalPolynomial:
        return cls(nvars, (((0,) * nvars, _frac(c)),))

    @classmethod
    def variable(cls, nvars: int, i: int) -> NumericalPolynomial:
        """``t_{i+1}`` (0-based index)."""
        exps = [0] * nvars
        exps[i] = 1
        return cls(nvars, ((tuple(exps), Fraction(1)),))

    @classmethod
    def univariate(cls, coeffs: Sequence[Number]) -> NumericalPolynomial:
        """From ascending coefficients ``[c0, c1, ...]``."""
        return cls(1, tuple(((k,), _frac(c)) for k, c in enumerate(coeffs)))

    @classmethod
    def binomial(cls, nvars: int, i: int, shift: int, k: int) -> NumericalPolynomial:
        """``C(t_{i+1} + shift, k)`` as a polynomial."""
        if k < 0:
            raise ValueError("binomial with negative lower index")
        out = cls.constant(nvars, 1)
        t = cls.variable(nvars, i)
        for j in range(k):
            out = out * (t + (shift - j))
        return out * Fraction(1, factorial(k))

    # -- queries ------------------------------------------------------------

    @property
    def coeffs(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e, _ in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e, _ in self.terms), default=-1)

    def leading_coefficient(self) -> Fraction:
        """Leading coefficient of a univariate polynomial (0 for zero)."""
        if self.nvars != 1:
            raise ValueError("leading coefficient is defined here for univariate polynomials")
        return self.coeffs.get((self.degree(),), Fraction(0))

    def ascending_coefficients(self) -> list[Fraction]:
        if self.nvars != 1:
            raise ValueError("univariate only")
        c = self.coeffs
        return [c.get((k,), Fraction(0)) for k in range(self.degree() + 1)]

    def evaluate(self, point: Sequence[Number]) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"point of length {len(point)} for {self.nvars} variables")
        pt = [_frac(x) for x in point]
        total = Fraction(0)
        for exps, c in self.terms:
            term = c
            for x, k in zip(pt, exps):
                if k:
                    term *= x**k
            total += term
        return total

    __call__ = evaluate

    def specialize(self, i: int, value: Number) -> NumericalPolynomial:
        """Substitute ``t_{i+1} = value``; the result has one variable fewer."""
        if self.nvars == 1:
            raise ValueError("cannot specialise the only variable")
        v = _frac(value)
        out: dict[tuple[int, ...], Fraction] = {}
        for exps, c in self.terms:
            key = exps[:i] + exps[i + 1 :]
            out[key] = out.get(key, Fraction(0)) + c * v ** exps[i]
        return NumericalPolynomial.from_dict(self.nvars - 1, out)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other: Any) -> NumericalPolynomial:
        if isinstance(other, NumericalPolynomial):
            if other.nvars != self.nvars:
                raise ValueError("polynomials in different numbers of variables")
            return other
        return NumericalPolynomial.constant(self.nvars, _frac(other))

    def __add__(self, other: Any) -> NumericalPolynomial:
        other = self._coerce(other)
        return NumericalPolynomial(self.nvars, self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> NumericalPolynomial:
        return NumericalPolynomial(self.nvars, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: Any) -> NumericalPolynomial:
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> NumericalPolynomial:
        return self._coerce(other) - self

    def __mul__(self, other: Any) -> NumericalPolynomial:
        other = self._coerce(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return NumericalPolynomial.from_dict(self.nvars, out)

    __rmul__ = __mul__

    # -- display ------------------------------------------------------------

    def text(self) -> str:
        """Display form such as ``t1*t2+2*t1+2*t2+4``."""
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.terms:
            mono = "*".join(
                f"t{i + 1}" if k == 1 else f"t{i + 1}^{k}" for i, k in enumerate(exps) if k
            )
            parts.append(_join_coeff(c, mono))
        return "+".join(parts).replace("+-", "-")

    def __str__(self) -> str:
        return self.text()

    def binomial_coefficients(self) -> dict[tuple[int, ...], Fraction]:
        """Coefficients in the basis ``prod_i C(t_i + a_i, a_i)``."""
        rest = self.coeffs
        out: dict[tuple[int, ...], Fraction] = {}
        while rest:
            a = min(rest, key=_display_order)
            c = rest[a] * prod(factorial(k) for k in a)
            out[a] = c
            basis = NumericalPolynomial.constant(self.nvars, 1)
            for i, k in enumerate(a):
                basis = basis * NumericalPolynomial.binomial(self.nvars, i, k, k)
            rest = (NumericalPolynomial.from_dict(self.nvars, rest) - basis * c).coeffs
        return out

    def binomial_text(self) -> str:
        """Display in the binomial basis, e.g. ``C(t1+1,1)*C(t2+1,1)+1``."""
        coeffs = self.binomial_coefficients()
        if not coeffs:
            return "0"
        parts = []
        for a in sorted(coeffs, key=_display_order):
            mono = "*".join(f"C(t{i + 1}+{k},{k})" for i, k in enumerate(a) if k)
            parts.append(_join_coeff(coeffs[a], mono))
        return "+".join(parts).replace("+-", "-")

    # -- serialisation --------------------------------------------------------

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "vars": self.nvars,
            "terms": [{"exps": list(e), "coeff": str(c)} for e, c in self.terms],
        }
        if self.validated_offset is not None:
            out["validated_offset"] = list(self.validated_offset)
        return out

    @classmethod
    def from_json(cls, data: Any) -> NumericalPolynomial:
        try:
            nvars = int(data["vars"])
            terms = tuple((tuple(int(x) for x in t["exps"]), Fraction(str(t["coeff"]))) for t in data["terms"])
            offset = data.get("validated_offset")
            return cls(nvars, terms, tuple(offset) if offset is not None else None)
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad polynomial JSON: {exc}") from exc


def _join_coeff(c: Fraction, mono: str) -> str:
    if not mono:
        return str(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{c}*{mono}"


# ---------------------------------------------------------------------------
# interpolation
# ---------------------------------------------------------------------------


def _newton_1d(xs: Sequence[int], ys: Sequence[Fraction]) -> list[Fraction]:
    """Monomial coefficients (ascending) of the interpolant through ``(xs, ys)``."""
    k = len(xs)
    dd = [Fraction(y) for y in ys]
    for level in range(1, k):
        for j in range(k - 1, level - 1, -1):
            dd[j] = (dd[j] - dd[j - 1]) / (xs[j] - xs[j - level])
    # Horner expansion of the Newton form
    poly = [dd[k - 1]]
    for j in range(k - 2, -1, -1):
        shifted = [Fraction(0)] + poly
        for idx, c in enumerate(poly):
            shifted[idx] -= xs[j] * c
        shifted[0] += dd[j]
        poly = shifted
    return poly


def interpolate_on_grid(
    values: Mapping[Sequence[int], Number], bounds: Sequence[int]
) -> NumericalPolynomial:
    """Unique polynomial of per-variable degree ``<= bounds`` through ``values``.

    ``values`` must cover a full product grid with at least ``bounds[i] + 1``
    coordinates along axis ``i``.  Extra grid points are used as checks.
    """
    s = len(bounds)
    vals = {tuple(int(x) for x in k): _frac(v) for k, v in values.items()}
    if not vals:
        raise InterpolationError("no grid values given")
    if any(len(k) != s for k in vals):
        raise InterpolationError("grid points do not match the number of degree bounds")
    axes = [sorted({k[i] for k in vals}) for i in range(s)]
    if len(vals) != prod(len(a) for a in axes):
        raise InterpolationError("values do not form a full product grid")
    for i, (a, b) in enumerate(zip(axes, bounds)):
        if len(a) < b + 1:
            raise InterpolationError(
                f"axis {i + 1} has {len(a)} coordinates, degree bound {b} needs {b + 1}"
            )
    fit_axes = [a[: b + 1] for a, b in zip(axes, bounds)]
    table = np.empty([b + 1 for b in bounds], dtype=object)
    for idx in itertools.product(*(range(b + 1) for b in bounds)):
        table[idx] = vals[tuple(fit_axes[i][j] for i, j in enumerate(idx))]
    for axis in range(s):
        moved = np.moveaxis(table, axis, -1)
        flat = moved.reshape(-1, moved.shape[-1])
        out = np.empty_like(flat)
        for r in range(flat.shape[0]):
            out[r, :] = _newton_1d(fit_axes[axis], list(flat[r]))
        table = np.moveaxis(out.reshape(moved.shape), -1, axis)
    coeffs = {idx: table[idx] for idx in itertools.product(*(range(b + 1) for b in bounds))}
    poly = NumericalPolynomial.from_dict(s, coeffs)
    for pt, v in vals.items():
        if poly.evaluate(pt) != v:
            raise InterpolationError(
                f"values not polynomial of claimed degree {tuple(bounds)}: mismatch at {pt}"
            )
    return poly


# ---------------------------------------------------------------------------
# Hilbert polynomial recovery
# ---------------------------------------------------------------------------


def _box(lower: Sequence[int], upper: Sequence[int]) -> Iterable[tuple[int, ...]]:
    return itertools.product(*(range(a, b + 1) for a, b in zip(lower, upper)))


def hilbert_polynomial(
    ideal: Any,
    *,
    budget: Budget | None = None,
    max_retries: int = 6,
) -> NumericalPolynomial:
    """Recover the multigraded Hilbert polynomial of a monomial ideal.

    Interpolates the Hilbert function on a grid at offset ``D`` (start:
    generation degree bound plus ``n_i``), checks the result on the grid
    shifted by one, and doubles ``D`` on mismatch.  The returned polynomial
    records the smallest offset ``o`` such that it agrees with the Hilbert
    function on the whole checked box ``[o, D + n + 1]``.
    """
    from .ideal import generation_degree_bound, hilbert_function

    if not ideal._lifted_is_monomial:
        raise TypeError("hilbert_polynomial is implemented for monomial ideals only")
    budget = resolve(budget)
    ring = ideal.ring
    n = ring.blocks

    def H(pt: Sequence[int]) -> int:
        return hilbert_function(ideal, pt, budget=budget)

    offset = [g + k for g, k in zip(generation_degree_bound(ideal), n)]
    for _ in range(max_retries + 1):
        grid = {pt: H(pt) for pt in _box(offset, [o + k for o, k in zip(offset, n)])}
        try:
            poly = interpolate_on_grid(grid, n)
        except InterpolationError:
            poly = None
        lo = [o + 1 for o in offset]
        hi = [o + k + 1 for o, k in zip(offset, n)]
        if poly is not None and all(poly.evaluate(pt) == H(pt) for pt in _box(lo, hi)):
            return _with_offset(poly, _descend(poly, H, list(offset), hi))
        offset = [max(1, 2 * o) for o in offset]
    raise StabilizationError(f"stabilization not detected within budget ({max_retries} retries)")


def _descend(poly: NumericalPolynomial, H, offset: list[int], top: list[int]) -> tuple[int, ...]:
    """Lower the offset axis by axis while the new face still agrees."""
    moved = True
    while moved:
        moved = False
        for i in range(len(offset)):
            while offset[i] > 0:
                lo = list(offset)
                hi = list(top)
                lo[i] = hi[i] = offset[i] - 1
                if all(poly.evaluate(pt) == H(pt) for pt in _box(lo, hi)):
                    offset[i] -= 1
                    moved = True
                else:
                    break
    return tuple(offset)


def _with_offset(poly: NumericalPolynomial, offset: tuple[int, ...]) -> NumericalPolynomial:
    return NumericalPolynomial(poly.nvars, poly.terms, offset)
