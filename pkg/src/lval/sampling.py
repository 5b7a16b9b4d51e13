"""Seeded random instances for experiments and tests.

The default entry pool is small and deliberately degenerate (zeros, +-1/2,
repeated values) so that families, empty supports and special cases show up
at a useful rate, not only the generic case.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

import numpy as np

from .skew import SkewMatrix

SMALL_POOL: tuple[Fraction, ...] = tuple(
    Fraction(x) for x in (0, 0, 1, -1, 2, -2, 3, Fraction(1, 2), Fraction(-1, 2), Fraction(1, 3), Fraction(-3, 2))
)


def random_rational(rng: random.Random, max_num: int = 9, max_den: int = 6) -> Fraction:
    return Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))


def random_entry(rng: random.Random, pool: Sequence[Fraction] | None = SMALL_POOL, p_pool: float = 0.6) -> Fraction:
    if pool and rng.random() < p_pool:
        return rng.choice(pool)
    return random_rational(rng)


def random_skew(
    rng: random.Random,
    n: int,
    pool: Sequence[Fraction] | None = SMALL_POOL,
    p_pool: float = 0.6,
    avoid: Sequence[Fraction] = (),
) -> SkewMatrix:
    upper = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            v = random_entry(rng, pool, p_pool)
            while v in avoid:
                v = random_entry(rng, pool, p_pool)
            upper[(i, j)] = v
    return SkewMatrix.from_upper(n, upper)


def generic_skew(rng: random.Random, n: int) -> SkewMatrix:
    """Entries drawn from a wide rational range, no pool."""
    return random_skew(rng, n, pool=None)


DIM4_MODES = ("generic", "delta0", "delta0_d4", "delta0_d4_d3", "d1", "d2", "d3", "d4")


def random_dim4(rng: random.Random, mode: str = "generic") -> SkewMatrix:
    """A 4 x 4 block with a_12 != 0, forced into one branch of the case split.

    ``delta0*`` modes force the Pfaffian to vanish (and optionally delta_4,
    delta_3); ``d<l>`` modes force delta_l = 0 while leaving the Pfaffian free.
    """
    if mode not in DIM4_MODES:
        raise ValueError(f"unknown mode {mode!r}")

    def ent():
        return random_entry(rng)

    a1 = ent()
    while a1 == 0:
        a1 = ent()
    a2, a3, b1, b2, c1 = (ent() for _ in range(5))
    if mode == "d1":
        b2 = a2 + a3
    elif mode == "d2":
        c1 = a3 + b1
    elif mode == "d3":
        c1 = a1 + b2
    elif mode == "d4":
        b1 = a1 + a2
    elif mode.startswith("delta0"):
        if mode in ("delta0_d4", "delta0_d4_d3"):
            b1 = a1 + a2
        if mode == "delta0_d4_d3":
            c1 = a1 + b2
        # Pfaffian a1 a3 + a2 c1 - b1 b2 = 0 solved for a3
        a3 = (b1 * b2 - a2 * c1) / a1
    return SkewMatrix.from_upper(4, {(1, 2): a1, (1, 3): b1, (1, 4): c1, (2, 3): a2, (2, 4): b2, (3, 4): a3})


def random_interaction(rng: np.random.Generator, n: int) -> np.ndarray:
    """M with M_ij + M_ji = 1 and diagonal 1/2, upper entries uniform in [0, 1]."""
    M = np.full((n, n), 0.5)
    iu = np.triu_indices(n, 1)
    M[iu] = rng.uniform(0.0, 1.0, size=len(iu[0]))
    M[(iu[1], iu[0])] = 1.0 - M[iu]
    return M


def random_simplex_point(rng: np.random.Generator, n: int) -> np.ndarray:
    p = rng.dirichlet(np.ones(n))
    return p / p.sum()
