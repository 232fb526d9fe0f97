"""Seeded random corpus shared by the property and acceptance tests."""

from __future__ import annotations

import random
from functools import lru_cache

from legproj.gauss import GaussDiagram, random_diagram

CORPUS_SEED = 20240917


@lru_cache(maxsize=None)
def corpus(n: int = 1000, max_chords: int = 8, seed: int = CORPUS_SEED) -> tuple[GaussDiagram, ...]:
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        c = rng.randint(0, max_chords)
        k = rng.choice((0, 0, 1, 2))
        out.append(random_diagram(c, k, rng.randrange(2 ** 32)))
    return tuple(out)


def sample_moves(d, rng, per_kind=2):
    """Up to ``per_kind`` random applicable moves of each kind (deletes and R3L: all)."""
    from legproj.moves import KINDS, applicable_moves
    out = []
    for kind in KINDS:
        ms = applicable_moves(d, [kind])
        if kind in ("R1L_insert", "R2L_insert"):
            ms = rng.sample(ms, min(per_kind, len(ms)))
        out.extend(ms)
    return out
