"""Hypercube persistence certificates for constant Hilbert polynomials.

An ideal ``I`` generated in degrees ``<= d`` with ``d_i >= m`` for every
factor has ``H_I(u) = m`` on all of ``d + N^s`` as soon as ``H_I = m`` on the
``2^s`` vertices of the unit cube at ``d``.  The proof reduces each axis to a
finitely generated module over one block's polynomial ring (a "slice") and
applies Gasharov's Macaulay-type bound with persistence; both pieces are
exposed here so the argument can be replayed on concrete data.
"""

from __future__ import annotations

import enum
import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

from .budget import Budget, resolve
from .errors import ParseError
from .grading import Multidegree, as_multidegree, graded_piece_dimension, leq
from .ideal import MultigradedIdeal, generation_degree_bound, hilbert_function
from .macaulay import macaulay_growth

log = logging.getLogger(__name__)


def hypercube_vertices(d: Sequence[int]) -> list[Multidegree]:
    """The ``2^s`` points ``b`` with ``b_i in {d_i, d_i + 1}``, lexicographic."""
    d = as_multidegree(d)
    return [tuple(x + bit for x, bit in zip(d, bits)) for bits in itertools.product((0, 1), repeat=len(d))]


# ---------------------------------------------------------------------------
# verdicts
# ---------------------------------------------------------------------------


class Status(enum.Enum):
    CERTIFIED = "certified"
    FAILED_AT_VERTEX = "failed_at_vertex"
    PRECONDITION_VIOLATED = "precondition_violated"


class Reason(enum.Enum):
    DEGREE_BOUND_TOO_LOW = "DegreeBoundTooLow"
    GENERATOR_DEGREE_EXCEEDS_BOUND = "GeneratorDegreeExceedsBound"


@dataclass(frozen=True)
class CertificateVerdict:
    status: Status
    vertex: Multidegree | None = None
    observed: int | None = None
    expected: int | None = None
    reason: Reason | None = None
    evaluations: int = field(default=0, compare=False)

    @property
    def certified(self) -> bool:
        return self.status is Status.CERTIFIED

    def to_json(self) -> dict[str, Any]:
        if self.status is Status.CERTIFIED:
            return {"status": "certified"}
        if self.status is Status.FAILED_AT_VERTEX:
            return {
                "status": "failed_at_vertex",
                "vertex": list(self.vertex),
                "observed": self.observed,
                "expected": self.expected,
            }
        return {"status": "precondition_violated", "reason": self.reason.value}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> CertificateVerdict:
        status = Status(data["status"])
        if status is Status.FAILED_AT_VERTEX:
            return cls(status, tuple(data["vertex"]), data["observed"], data["expected"])
        if status is Status.PRECONDITION_VIOLATED:
            return cls(status, reason=Reason(data["reason"]))
        return cls(status)


def certify_constant(
    ideal: MultigradedIdeal,
    d: Sequence[int],
    m: int,
    *,
    budget: Budget | None = None,
    threads: int = 1,
) -> CertificateVerdict:
    """Check the hypercube certificate for ``P_I = m`` at corner ``d``.

    A ``CERTIFIED`` verdict proves ``H_I(u) = m`` for every ``u >= d``.
    Precondition failures come back as verdicts; only resource exhaustion
    raises.
    """
    d = as_multidegree(d, ideal.ring.s)
    if m < 0:
        raise ValueError("m must be a natural number")
    budget = resolve(budget)
    if any(di < m for di in d):
        return CertificateVerdict(Status.PRECONDITION_VIOLATED, reason=Reason.DEGREE_BOUND_TOO_LOW)
    if not leq(generation_degree_bound(ideal), d):
        return CertificateVerdict(
            Status.PRECONDITION_VIOLATED, reason=Reason.GENERATOR_DEGREE_EXCEEDS_BOUND
        )
    vertices = hypercube_vertices(d)

    def evaluate(b: Multidegree) -> int:
        return hilbert_function(ideal, b, budget=budget)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(evaluate, vertices))
    else:
        values = [evaluate(b) for b in vertices]
    for b, h in zip(vertices, values):
        if h != m:
            return CertificateVerdict(
                Status.FAILED_AT_VERTEX, b, h, m, evaluations=len(vertices)
            )
    return CertificateVerdict(Status.CERTIFIED, evaluations=len(vertices))


# ---------------------------------------------------------------------------
# module slices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModuleSlice:
    """``M = (+)_u (S/I)_{(fixed, u at axis)}`` as a module over one block's ring.

    ``v`` is the rank of the free module covering ``M`` (the dimension of the
    degree piece with the free axis set to 0), ``l`` the top degree of its
    basis (always 0 here) and ``generator_degree_bound`` the degree along the
    free axis below which the submodule ``N`` is generated.
    """

    prefix: tuple[int, ...]
    v: int
    generator_degree_bound: int
    hf: Mapping[int, int]
    l: int = 0
    axis: int | None = None
    provenance: str = "engine"

    def value(self, u: int) -> int:
        if u not in self.hf:
            raise KeyError(f"slice has no Hilbert function value at degree {u}")
        return self.hf[u]

    def to_json(self) -> dict[str, Any]:
        return {
            "prefix": list(self.prefix),
            "axis": None if self.axis is None else self.axis + 1,
            "v": self.v,
            "generator_degree_bound": self.generator_degree_bound,
            "l": self.l,
            "hf": {str(u): h for u, h in sorted(self.hf.items())},
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any], provenance: str | None = None) -> ModuleSlice:
        try:
            hf = {int(u): int(h) for u, h in data["hf"].items()}
            axis = data.get("axis")
            return cls(
                prefix=tuple(int(x) for x in data.get("prefix", ())),
                v=int(data["v"]),
                generator_degree_bound=int(data["generator_degree_bound"]),
                hf=hf,
                l=int(data.get("l", 0)),
                axis=None if axis is None else int(axis) - 1,
                provenance=provenance or data.get("provenance", "user"),
            )
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise ParseError(f"bad slice JSON: {exc}") from exc


def module_slice(
    ideal: MultigradedIdeal,
    prefix: Sequence[int],
    u_max: int,
    *,
    axis: int | None = None,
    budget: Budget | None = None,
) -> ModuleSlice:
    """Slice of ``S/I`` along one axis (default: the last), degrees ``0..u_max``.

    ``prefix`` lists the fixed degrees of the other ``s - 1`` factors in order.
    """
    s = ideal.ring.s
    axis = s - 1 if axis is None else axis
    if not 0 <= axis < s:
        raise ValueError(f"axis {axis} out of range for {s} factors")
    prefix = as_multidegree(prefix, s - 1)
    bound = generation_degree_bound(ideal)[axis]
    if u_max < bound:
        raise ValueError(f"u_max={u_max} is below the generator degree bound {bound} on this axis")

    def point(u: int) -> Multidegree:
        return prefix[:axis] + (u,) + prefix[axis:]

    v = graded_piece_dimension(ideal.ring.free(), point(0))
    budget = resolve(budget)
    hf = {u: hilbert_function(ideal, point(u), budget=budget) for u in range(u_max + 1)}
    return ModuleSlice(prefix, v, bound, hf, 0, axis, "engine")


# ---------------------------------------------------------------------------
# Gasharov check
# ---------------------------------------------------------------------------


class Growth(enum.Enum):
    BOUND_VIOLATED = "BoundViolated"
    GROWTH_STRICT = "GrowthStrict"
    MAXIMAL_GROWTH_PERSISTS = "MaximalGrowthPersists"


@dataclass(frozen=True)
class GasharovResult:
    outcome: Growth
    d: int
    value: int
    next_value: int
    bound: int
    # persistence clause: None when not checked (no data or not applicable)
    persistence_checked: bool = False
    after_next: int | None = None
    after_next_bound: int | None = None
    detail: str = ""

    def to_json(self) -> dict[str, Any]:
        out = {
            "outcome": self.outcome.value,
            "d": self.d,
            "value": self.value,
            "next_value": self.next_value,
            "bound": self.bound,
            "persistence_checked": self.persistence_checked,
        }
        if self.after_next is not None:
            out["after_next"] = self.after_next
            out["after_next_bound"] = self.after_next_bound
        if self.detail:
            out["detail"] = self.detail
        return out


def gasharov_check(slice_: ModuleSlice, d: int) -> GasharovResult:
    """Compare ``dim M_{d+1}`` with the Macaulay bound ``(dim M_d)^<d-l>``.

    On equality, and when the submodule is generated in degrees ``<= d``,
    the persistence clause predicts ``dim M_{d+2} = (dim M_{d+1})^<d-l+1>``;
    this is re-checked when ``hf`` has a value at ``d + 2``.  A failure of
    either the bound or the prediction is reported as ``BOUND_VIOLATED``.
    """
    l = slice_.l
    if d < l + 1:
        raise ValueError(f"Gasharov's bound needs d >= l + 1 = {l + 1}, got d = {d}")
    h0, h1 = slice_.value(d), slice_.value(d + 1)
    bound = macaulay_growth(h0, d - l)
    if h1 > bound:
        result = GasharovResult(Growth.BOUND_VIOLATED, d, h0, h1, bound, detail="dim M_{d+1} exceeds bound")
    elif h1 < bound:
        result = GasharovResult(Growth.GROWTH_STRICT, d, h0, h1, bound)
    else:
        result = GasharovResult(Growth.MAXIMAL_GROWTH_PERSISTS, d, h0, h1, bound)
        if slice_.generator_degree_bound <= d and (d + 2) in slice_.hf:
            h2 = slice_.hf[d + 2]
            b2 = macaulay_growth(h1, d - l + 1)
            outcome = Growth.MAXIMAL_GROWTH_PERSISTS if h2 == b2 else Growth.BOUND_VIOLATED
            result = GasharovResult(
                outcome, d, h0, h1, bound, True, h2, b2,
                "" if h2 == b2 else "maximal growth did not persist to d+2",
            )
    if result.outcome is Growth.BOUND_VIOLATED and slice_.provenance == "engine":
        log.error("engine-produced slice breaks the Macaulay-type growth bound: %s", result)
    return result


# ---------------------------------------------------------------------------
# replay of the inductive proof
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReplayStep:
    axis: int
    fixed: tuple[int, ...]
    result: GasharovResult
    persists_to_horizon: bool


def replay_induction(
    ideal: MultigradedIdeal,
    d: Sequence[int],
    m: int,
    *,
    horizon: int = 2,
    budget: Budget | None = None,
) -> list[ReplayStep]:
    """Replay the axis-by-axis induction behind :func:`certify_constant`.

    Axis ``s`` first: for every choice ``b_i in {d_i, d_i + 1}`` on the other
    axes, slice along axis ``s`` and run :func:`gasharov_check` at ``d_s``.
    Then axis ``j < s`` with ``b_i`` as before for ``i < j`` and ``u_i`` in
    ``[d_i, d_i + horizon]`` for ``i > j``.  Each step also records whether
    the slice stays equal to ``m`` up to ``d_j + horizon``.
    """
    d = as_multidegree(d, ideal.ring.s)
    if any(x < 1 for x in d):
        raise ValueError("the replay needs d_i >= 1 on every axis")
    s = ideal.ring.s
    budget = resolve(budget)
    steps: list[ReplayStep] = []
    for axis in range(s - 1, -1, -1):
        before = [(x, x + 1) for x in d[:axis]]
        after = [range(x, x + horizon + 1) for x in d[axis + 1 :]]
        for fixed in itertools.product(*before, *after):
            sl = module_slice(ideal, fixed, d[axis] + max(horizon, 2), axis=axis, budget=budget)
            res = gasharov_check(sl, d[axis])
            tail = all(sl.hf[u] == m for u in range(d[axis], d[axis] + max(horizon, 2) + 1))
            steps.append(ReplayStep(axis, tuple(fixed), res, tail))
    return steps
