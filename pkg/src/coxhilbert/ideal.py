"""Homogeneous ideals and their multigraded Hilbert functions.

Two evaluation paths:

* monomial ideals: count standard monomials block by block.  For the first
  block every monomial ``xi`` determines the ideal of the remaining blocks
  ``(g_rest : g_first | xi)``; identical ideals are counted once.
* everything else (including quotient rings ``R/I_X``): ``dim S_e`` minus
  the exact rank of the matrix spanned by ``u * g`` over all generators and
  relations ``g`` and monomials ``u`` of complementary degree.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, lcm, prod
from typing import Any, Sequence

import numpy as np

from . import kernels
from .budget import Budget, resolve
from .errors import ParseError
from .grading import (
    Monomial,
    Multidegree,
    RingElement,
    RingSpec,
    as_multidegree,
    graded_piece_dimension,
    monomial_array,
    parse_monomial,
)
from .linalg import exact_rank, modular_rank, random_prime

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class HilbertValue:
    degree: Multidegree
    value: int
    verified: bool = True

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"degree": list(self.degree), "value": self.value}
        if not self.verified:
            out["unverified"] = True
        return out


@dataclass(frozen=True)
class MultigradedIdeal:
    """Ideal generated by homogeneous elements of ``ring``.

    When ``ring`` carries relations, all Hilbert data refers to the lifted
    ideal ``relations + generators`` in the free ring.
    """

    ring: RingSpec
    generators: tuple[RingElement, ...] = ()
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        gens = tuple(g for g in self.generators)
        for g in gens:
            self.ring._check_element(g)
            if g.is_zero:
                raise ValueError("zero generator; use an empty generator list for the zero ideal")
            if not g.is_homogeneous(self.ring):
                raise ValueError(f"generator {g.text(self.ring)} is not homogeneous")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def zero(cls, ring: RingSpec) -> MultigradedIdeal:
        return cls(ring, ())

    @classmethod
    def from_monomials(cls, ring: RingSpec, monomials: Sequence[Any]) -> MultigradedIdeal:
        """Build from canonical strings, :class:`Monomial` objects or exponent vectors."""
        gens = []
        for m in monomials:
            if isinstance(m, str):
                m = parse_monomial(ring, m)
            exps = m.exps if isinstance(m, Monomial) else tuple(m)
            gens.append(RingElement.monomial(exps))
        return cls(ring, tuple(gens))

    @property
    def is_monomial(self) -> bool:
        return all(g.is_monomial for g in self.generators)

    @property
    def lifted_generators(self) -> tuple[RingElement, ...]:
        return self.ring.relations + self.generators

    @property
    def _lifted_is_monomial(self) -> bool:
        return all(g.is_monomial for g in self.lifted_generators)

    def generator_exponents(self) -> np.ndarray:
        """Exponent matrix of the (lifted) generators of a monomial ideal."""
        if not self._lifted_is_monomial:
            raise TypeError("ideal is not monomial")
        rows = [g.terms[0][1] for g in self.lifted_generators]
        return np.array(rows, dtype=np.int64).reshape(len(rows), self.ring.nvars)

    def text(self) -> str:
        return "(" + ", ".join(g.text(self.ring) for g in self.generators) + ")"


# ---------------------------------------------------------------------------
# membership and degree bounds
# ---------------------------------------------------------------------------


def is_member(ideal: MultigradedIdeal, m: Monomial | Sequence[int]) -> bool:
    """Whether the monomial ``m`` lies in the monomial ideal."""
    if not ideal._lifted_is_monomial:
        raise TypeError("is_member needs a monomial ideal")
    exps = np.array(m.exps if isinstance(m, Monomial) else m, dtype=np.int64)
    if exps.shape != (ideal.ring.nvars,):
        raise ValueError("monomial has the wrong number of variables")
    return bool(kernels.divisible_mask(exps.reshape(1, -1), ideal.generator_exponents())[0])


def generation_degree_bound(ideal: MultigradedIdeal) -> Multidegree:
    """Componentwise max of generator multidegrees (relations included)."""
    bound = [0] * ideal.ring.s
    for g in ideal.lifted_generators:
        for i, v in enumerate(g.multidegree(ideal.ring)):
            bound[i] = max(bound[i], v)
    return tuple(bound)


# ---------------------------------------------------------------------------
# monomial path
# ---------------------------------------------------------------------------


def _minimalize(gens: np.ndarray) -> np.ndarray:
    """Drop generators divisible by another generator (and duplicates)."""
    if gens.shape[0] <= 1:
        return gens
    gens = np.unique(gens, axis=0)
    div = kernels.divisor_matrix(gens, gens)  # div[r, k]: gens[k] | gens[r]
    np.fill_diagonal(div, False)
    keep = ~div.any(axis=1)
    return gens[keep]


class _StandardCounter:
    """Memoised block-by-block count of standard monomials."""

    def __init__(self, blocks: tuple[int, ...], budget: Budget):
        self.blocks = blocks
        self.widths = [n + 1 for n in blocks]
        self.budget = budget
        self.memo: dict[tuple, int] = {}

    def count(self, start: int, gens: np.ndarray, e: tuple[int, ...]) -> int:
        # gens covers blocks start.. only; e likewise
        if gens.shape[0] == 0:
            return prod(comb(n + k, n) for n, k in zip(self.blocks[start:], e))
        if not gens.any(axis=1).all():
            return 0  # unit ideal
        gens = _minimalize(gens)
        key = (start, e, gens.tobytes(), gens.shape[0])
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        width = self.widths[start]
        self.budget.check_monomials(comb(e[0] + width - 1, width - 1))
        mons = kernels.compositions(e[0], width)
        head = np.ascontiguousarray(gens[:, :width])
        if start == len(self.blocks) - 1:
            result = int(mons.shape[0] - kernels.divisible_mask(mons, head).sum())
        else:
            tail = np.ascontiguousarray(gens[:, width:])
            table = kernels.divisor_matrix(mons, head)
            patterns, counts = np.unique(table, axis=0, return_counts=True)
            result = 0
            for pattern, mult in zip(patterns, counts):
                sub = tail[pattern]
                result += int(mult) * self.count(start + 1, sub, e[1:])
        self.memo[key] = result
        return result


def _count_standard(ideal: MultigradedIdeal, e: Multidegree, budget: Budget) -> int:
    gens = ideal.generator_exponents()
    # generators of too high a degree contribute nothing at e
    fits = np.ones(gens.shape[0], dtype=np.bool_)
    for i in range(ideal.ring.s):
        fits &= gens[:, ideal.ring.block_slice(i)].sum(axis=1) <= e[i]
    usable = gens[fits]
    counter = ideal._cache.get("counter")
    if counter is None or counter.budget != budget:
        counter = _StandardCounter(ideal.ring.blocks, budget)
        ideal._cache["counter"] = counter
    return counter.count(0, usable, e)


def count_by_enumeration(ideal: MultigradedIdeal, e: Sequence[int], budget: Budget | None = None) -> int:
    """Brute force: enumerate ``S_e`` and count monomials outside the ideal."""
    e = as_multidegree(e, ideal.ring.s)
    mons = monomial_array(ideal.ring, e, budget)
    return int(mons.shape[0] - kernels.divisible_mask(mons, ideal.generator_exponents()).sum())


# ---------------------------------------------------------------------------
# rank path
# ---------------------------------------------------------------------------


def _integer_terms(g: RingElement) -> list[tuple[int, tuple[int, ...]]]:
    den = lcm(*(c.denominator for c, _ in g.terms))
    return [(int(c * den), exps) for c, exps in g.terms]


def multiple_rows(ideal: MultigradedIdeal, e: Multidegree, budget: Budget) -> tuple[int, list[dict[int, int]]]:
    """Rows ``u * g`` expanded in the canonical basis of ``S_e``.

    Returns ``(dim S_e, rows)``.
    """
    ring = ideal.ring.free()
    basis = monomial_array(ring, e, budget)
    index = {row.tobytes(): i for i, row in enumerate(basis)}
    gens = ideal.lifted_generators
    total = 0
    plans = []
    for g in gens:
        dg = g.multidegree(ring)
        rest = tuple(a - b for a, b in zip(e, dg))
        if any(v < 0 for v in rest):
            continue
        total += graded_piece_dimension(ring, rest)
        plans.append((g, rest))
    budget.check_rows(total)
    rows: list[dict[int, int]] = []
    for g, rest in plans:
        mults = monomial_array(ring, rest, budget)
        terms = _integer_terms(g)
        shifted = [(c, mults + np.array(exps, dtype=np.int64)) for c, exps in terms]
        for r in range(mults.shape[0]):
            row: dict[int, int] = {}
            for c, arr in shifted:
                col = index[arr[r].tobytes()]
                row[col] = row.get(col, 0) + c
            row = {k: v for k, v in row.items() if v}
            if row:
                rows.append(row)
    return basis.shape[0], rows


def _rank_path(ideal: MultigradedIdeal, e: Multidegree, budget: Budget, prime: int | None) -> int:
    dim, rows = multiple_rows(ideal, e, budget)
    rank = exact_rank(rows) if prime is None else modular_rank(rows, prime)
    return dim - rank


# ---------------------------------------------------------------------------
# public evaluation
# ---------------------------------------------------------------------------


def hilbert_function(
    ideal: MultigradedIdeal,
    e: Sequence[int],
    *,
    budget: Budget | None = None,
    method: str = "auto",
) -> int:
    """``dim_k (S/I)_e``, exact.

    ``method`` is ``"auto"``, ``"count"`` (monomial ideals only) or
    ``"rank"`` (always valid).
    """
    e = as_multidegree(e, ideal.ring.s)
    budget = resolve(budget)
    if method == "auto":
        method = "count" if ideal._lifted_is_monomial else "rank"
    key = ("hf", method, e)
    cached = ideal._cache.get(key)
    if cached is not None:
        return cached
    if method == "count":
        value = _count_standard(ideal, e, budget)
    elif method == "rank":
        value = _rank_path(ideal, e, budget, None)
    else:
        raise ValueError(f"unknown method {method!r}")
    ideal._cache[key] = value
    return value


def hilbert_value(
    ideal: MultigradedIdeal,
    e: Sequence[int],
    *,
    budget: Budget | None = None,
    allow_probabilistic: bool = False,
    prime: int | None = None,
) -> HilbertValue:
    """Like :func:`hilbert_function` but wrapped, optionally via rank mod p.

    The modular value is an upper bound on the true one and is marked
    unverified.  Monomial ideals never take the modular path.
    """
    e = as_multidegree(e, ideal.ring.s)
    budget = resolve(budget)
    if allow_probabilistic and not ideal._lifted_is_monomial:
        p = prime or random_prime()
        return HilbertValue(e, _rank_path(ideal, e, budget, p), verified=False)
    return HilbertValue(e, hilbert_function(ideal, e, budget=budget))


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def _parse_coeff(raw: Any) -> Fraction:
    if isinstance(raw, bool):
        raise ParseError(f"bad coefficient {raw!r}")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, str):
        try:
            return Fraction(raw.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad coefficient {raw!r}") from exc
    raise ParseError(f"coefficient must be a string like \"p/q\", got {raw!r}")


def parse_element(ring: RingSpec, raw: Any) -> RingElement:
    if isinstance(raw, str):
        return RingElement.monomial(parse_monomial(ring, raw).exps)
    if not isinstance(raw, dict) or "terms" not in raw:
        raise ParseError(f"element must be a monomial string or {{\"terms\": [...]}}, got {raw!r}")
    terms = []
    for t in raw["terms"]:
        try:
            exps = tuple(int(x) for x in t["exps"])
            coeff = _parse_coeff(t["coeff"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad term {t!r}") from exc
        if len(exps) != ring.nvars:
            raise ParseError(f"term {t!r} has {len(exps)} exponents, ring has {ring.nvars} variables")
        terms.append((coeff, exps))
    try:
        return RingElement(tuple(terms))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def element_to_json(ring: RingSpec, el: RingElement) -> Any:
    if el.is_monomial and el.terms[0][0] == 1:
        return Monomial(el.terms[0][1]).text(ring)
    return {"terms": [{"coeff": str(c), "exps": list(e)} for c, e in el.terms]}


def ideal_from_json(data: Any) -> MultigradedIdeal:
    if not isinstance(data, dict) or "blocks" not in data:
        raise ParseError("ideal JSON needs a \"blocks\" list")
    try:
        blocks = tuple(int(n) for n in data["blocks"])
        base = RingSpec(blocks)
        relations = tuple(parse_element(base, r) for r in data.get("relations", []))
        ring = RingSpec(blocks, relations)
        gens = tuple(parse_element(ring, g) for g in data.get("generators", []))
        return MultigradedIdeal(ring, gens)
    except ParseError:
        raise
    except (ValueError, TypeError) as exc:
        raise ParseError(str(exc)) from exc


def ideal_to_json(ideal: MultigradedIdeal) -> dict[str, Any]:
    ring = ideal.ring
    return {
        "blocks": list(ring.blocks),
        "relations": [element_to_json(ring, r) for r in ring.relations],
        "generators": [element_to_json(ring, g) for g in ideal.generators],
    }


def load_ideal(path: str) -> MultigradedIdeal:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    return ideal_from_json(data)
