"""Multigraded ambient ring: Cox ring of a product of projective spaces.

Variables are flattened block-major: block ``i`` (1-based, as in the usual
``x_{i,j}`` notation) contributes ``n_i + 1`` variables ``x[i][0..n_i]``, each
of degree ``e_i``.  Within one multidegree monomials are listed
lexicographically on the exponent vector with ``x[1][0]`` largest, largest
first; :func:`order_key` turns that listing into an increasing sequence.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, prod
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .budget import Budget, resolve
from .errors import ParseError

Multidegree = tuple[int, ...]


def as_multidegree(values: Iterable[int], s: int | None = None) -> Multidegree:
    """Validate and normalise a multidegree."""
    e = tuple(int(v) for v in values)
    if s is not None and len(e) != s:
        raise ValueError(f"multidegree {e} has length {len(e)}, ring has {s} factors")
    if any(v < 0 for v in e):
        raise ValueError(f"multidegree {e} has a negative entry")
    return e


def leq(a: Sequence[int], b: Sequence[int]) -> bool:
    """Componentwise ``a <= b``."""
    return all(x <= y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# monomials and elements
# ---------------------------------------------------------------------------


def order_key(exps: Sequence[int]) -> tuple[int, ...]:
    """Sort key for the canonical order (lex-largest exponent vector first)."""
    return tuple(-x for x in exps)


@dataclass(frozen=True, order=False)
class Monomial:
    exps: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "exps", tuple(int(x) for x in self.exps))
        if any(x < 0 for x in self.exps):
            raise ValueError("negative exponent")

    def multidegree(self, ring: RingSpec) -> Multidegree:
        return ring.degree_of(self.exps)

    def divides(self, other: Monomial) -> bool:
        return all(a <= b for a, b in zip(self.exps, other.exps))

    def __mul__(self, other: Monomial) -> Monomial:
        return Monomial(tuple(a + b for a, b in zip(self.exps, other.exps)))

    def text(self, ring: RingSpec) -> str:
        return format_monomial(ring, self.exps)


@dataclass(frozen=True)
class RingElement:
    """Polynomial with exact rational coefficients.

    ``terms`` is a tuple of ``(coefficient, exponents)`` pairs without
    duplicates or zero coefficients, stored in the canonical order.
    """

    terms: tuple[tuple[Fraction, tuple[int, ...]], ...]

    def __post_init__(self) -> None:
        merged: dict[tuple[int, ...], Fraction] = {}
        for coeff, exps in self.terms:
            key = tuple(int(x) for x in exps)
            if any(x < 0 for x in key):
                raise ValueError("negative exponent")
            merged[key] = merged.get(key, Fraction(0)) + Fraction(coeff)
        lengths = {len(k) for k in merged}
        if len(lengths) > 1:
            raise ValueError("terms have exponent vectors of different lengths")
        clean = tuple(
            (c, k) for k, c in sorted(merged.items(), key=lambda kv: order_key(kv[0])) if c != 0
        )
        object.__setattr__(self, "terms", clean)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: Fraction | int = 1) -> RingElement:
        return cls(((Fraction(coeff), tuple(exps)),))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def degrees(self, ring: RingSpec) -> set[Multidegree]:
        return {ring.degree_of(exps) for _, exps in self.terms}

    def is_homogeneous(self, ring: RingSpec) -> bool:
        return len(self.degrees(ring)) <= 1

    def multidegree(self, ring: RingSpec) -> Multidegree:
        degs = self.degrees(ring)
        if len(degs) != 1:
            raise ValueError("element is not homogeneous (or is zero)")
        return next(iter(degs))

    def text(self, ring: RingSpec) -> str:
        if not self.terms:
            return "0"
        parts = []
        for coeff, exps in self.terms:
            mono = format_monomial(ring, exps)
            if coeff == 1:
                parts.append(mono)
            elif coeff == -1:
                parts.append("-" + mono)
            elif mono == "1":
                parts.append(str(coeff))
            else:
                parts.append(f"{coeff}*{mono}")
        return "+".join(parts).replace("+-", "-")


# ---------------------------------------------------------------------------
# ring
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RingSpec:
    """Block structure ``(n_1, ..., n_s)`` plus optional quotient relations."""

    blocks: tuple[int, ...]
    relations: tuple[RingElement, ...] = field(default=())

    def __post_init__(self) -> None:
        blocks = tuple(int(n) for n in self.blocks)
        if not blocks:
            raise ValueError("a ring needs at least one block")
        if any(n < 0 for n in blocks):
            raise ValueError("block sizes n_i must be >= 0")
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "relations", tuple(self.relations))
        offsets = [0]
        for n in blocks:
            offsets.append(offsets[-1] + n + 1)
        object.__setattr__(self, "_offsets", tuple(offsets))
        for rel in self.relations:
            self._check_element(rel)
            if rel.is_zero:
                raise ValueError("zero relation")
            if not rel.is_homogeneous(self):
                raise ValueError(f"relation {rel.text(self)} is not homogeneous")

    @property
    def s(self) -> int:
        return len(self.blocks)

    @property
    def nvars(self) -> int:
        return self._offsets[-1]

    def block_slice(self, i: int) -> slice:
        """Columns of block ``i`` (0-based) in the flattened exponent vector."""
        return slice(self._offsets[i], self._offsets[i + 1])

    def free(self) -> RingSpec:
        """The ambient polynomial ring without relations."""
        return RingSpec(self.blocks) if self.relations else self

    def degree_of(self, exps: Sequence[int]) -> Multidegree:
        if len(exps) != self.nvars:
            raise ValueError(f"exponent vector of length {len(exps)}, ring has {self.nvars} variables")
        return tuple(sum(exps[self.block_slice(i)]) for i in range(self.s))

    def _check_element(self, el: RingElement) -> None:
        for _, exps in el.terms:
            if len(exps) != self.nvars:
                raise ValueError(
                    f"exponent vector of length {len(exps)}, ring has {self.nvars} variables"
                )

    def variable(self, block: int, index: int) -> Monomial:
        """``x[block][index]`` with ``block`` 1-based."""
        if not 1 <= block <= self.s or not 0 <= index <= self.blocks[block - 1]:
            raise ValueError(f"no variable x[{block}][{index}]")
        exps = [0] * self.nvars
        exps[self._offsets[block - 1] + index] = 1
        return Monomial(tuple(exps))


def graded_piece_dimension(ring: RingSpec, e: Sequence[int]) -> int:
    """``dim_k`` of the degree-``e`` piece of the free ring: prod C(n_i + e_i, n_i)."""
    e = as_multidegree(e, ring.s)
    return prod(comb(n + k, n) for n, k in zip(ring.blocks, e))


def monomial_array(ring: RingSpec, e: Sequence[int], budget: Budget | None = None) -> np.ndarray:
    """Exponent matrix of all monomials of degree ``e`` in canonical order."""
    e = as_multidegree(e, ring.s)
    resolve(budget).check_monomials(graded_piece_dimension(ring, e))
    blocks = [kernels.compositions(k, n + 1) for n, k in zip(ring.blocks, e)]
    out = blocks[0]
    for nxt in blocks[1:]:
        left = np.repeat(out, nxt.shape[0], axis=0)
        right = np.tile(nxt, (out.shape[0], 1))
        out = np.hstack([left, right])
    return np.ascontiguousarray(out, dtype=np.int64)


def enumerate_monomials(
    ring: RingSpec, e: Sequence[int], budget: Budget | None = None
) -> list[Monomial]:
    """All monomials of multidegree ``e`` in the canonical order.

    Raises :class:`~coxhilbert.errors.BudgetExceeded` instead of truncating.
    """
    return [Monomial(tuple(row)) for row in monomial_array(ring, e, budget).tolist()]


# ---------------------------------------------------------------------------
# canonical text form
# ---------------------------------------------------------------------------

_FACTOR = re.compile(r"^x\[(\d+)\]\[(\d+)\](?:\^(\d+))?$")


def format_monomial(ring: RingSpec, exps: Sequence[int]) -> str:
    """Canonical text: ``x[i][j]^k`` factors joined by ``*``, ``1`` if empty."""
    factors = []
    for i, n in enumerate(ring.blocks):
        base = ring._offsets[i]
        for j in range(n + 1):
            k = exps[base + j]
            if k == 1:
                factors.append(f"x[{i + 1}][{j}]")
            elif k > 1:
                factors.append(f"x[{i + 1}][{j}]^{k}")
    return "*".join(factors) if factors else "1"


def parse_monomial(ring: RingSpec, text: str) -> Monomial:
    """Inverse of :func:`format_monomial`; factors may repeat or come in any order."""
    text = text.strip()
    exps = [0] * ring.nvars
    if text == "1":
        return Monomial(tuple(exps))
    for raw in text.split("*"):
        m = _FACTOR.match(raw.strip())
        if not m:
            raise ParseError(f"bad monomial factor {raw!r} in {text!r}")
        block, index = int(m.group(1)), int(m.group(2))
        power = int(m.group(3)) if m.group(3) else 1
        if not 1 <= block <= ring.s or index > ring.blocks[block - 1]:
            raise ParseError(f"variable x[{block}][{index}] not in ring with blocks {list(ring.blocks)}")
        exps[ring._offsets[block - 1] + index] += power
    return Monomial(tuple(exps))
