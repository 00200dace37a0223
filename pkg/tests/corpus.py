"""Randomised monomial ideals for property and acceptance tests."""

from __future__ import annotations

import random

from coxhilbert import MultigradedIdeal, RingSpec


def random_monomial_ideal(rng: random.Random, s_max: int = 3, n_max: int = 2, deg_max: int = 4):
    s = rng.randint(1, s_max)
    blocks = tuple(rng.randint(0, n_max) for _ in range(s))
    ring = RingSpec(blocks)
    offsets = []
    o = 0
    for n in blocks:
        offsets.append(o)
        o += n + 1
    gens = []
    if rng.random() < 0.6:
        # cut every block down to one free variable so H is eventually bounded
        for i, n in enumerate(blocks):
            for j in range(1, n + 1):
                if rng.random() < 0.85:
                    exps = [0] * ring.nvars
                    exps[offsets[i] + j] = rng.randint(1, deg_max)
                    gens.append(exps)
    for _ in range(rng.randint(1, 4)):
        exps = [0] * ring.nvars
        for i, n in enumerate(blocks):
            k = rng.randint(0, deg_max)
            for _ in range(k):
                exps[offsets[i] + rng.randint(0, n)] += 1
        if any(exps):
            gens.append(exps)
    if not gens:
        exps = [0] * ring.nvars
        exps[0] = 1
        gens.append(exps)
    return MultigradedIdeal.from_monomials(ring, gens)


def corpus(count: int, seed: int, **kw):
    rng = random.Random(seed)
    return [random_monomial_ideal(rng, **kw) for _ in range(count)]
