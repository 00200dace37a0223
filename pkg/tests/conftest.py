import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from coxhilbert import MultigradedIdeal, RingElement, RingSpec  # noqa: E402

I_PRIME_GENS = [
    "x[1][0]", "x[1][2]", "x[1][3]", "x[2][0]", "x[2][2]", "x[2][3]",
    "x[1][1]^2", "x[1][1]*x[1][4]", "x[2][1]^2", "x[2][1]*x[2][4]",
]
J_GENS = ["x[1][0]", "x[1][2]", "x[1][3]", "x[2][0]", "x[2][2]", "x[2][3]", "x[1][1]^2", "x[2][1]^2"]


def plucker_terms(block: int, s: int):
    """x0x5 - x1x4 + x2x3 in block ``block`` (1-based) of s copies of P^5."""
    def mono(*idx):
        e = [0] * (6 * s)
        for i in idx:
            e[6 * (block - 1) + i] += 1
        return tuple(e)

    return [(1, mono(0, 5)), (-1, mono(1, 4)), (1, mono(2, 3))]


def plucker(block: int, s: int) -> RingElement:
    return RingElement(tuple(plucker_terms(block, s)))


@pytest.fixture
def i_prime():
    return MultigradedIdeal.from_monomials(RingSpec((5, 5)), I_PRIME_GENS)


@pytest.fixture
def gr24_ring():
    return RingSpec((5, 5), (plucker(1, 2), plucker(2, 2)))


@pytest.fixture
def gr_j(gr24_ring):
    return MultigradedIdeal.from_monomials(gr24_ring, J_GENS)


@pytest.fixture
def write_json(tmp_path):
    def _write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)

    return _write
