"""Infinite Aut versus block structure, sampled in dimension 3.

For random 3x3 matrices, records whether the classifier reports a
parametric automorphism family and whether some I with |I| >= 2 satisfies
the block condition (a_ij = 0 on I, a_ik = a_jk off I).  The expectation
is that every algebra with infinite Aut has such a block; outcomes are
tallied and printed, never asserted.
"""

from __future__ import annotations

import argparse
import json
import random
from collections import Counter
from dataclasses import asdict, dataclass
from fractions import Fraction

from lval.algebra import LVAlgebra
from lval.autgroup import block_supports, classify_dim3
from lval.skew import skew3, skew3_params

POOL = [Fraction(x) for x in (0, 0, 0, 1, -1, 2)] + [Fraction(1, 2), Fraction(-1, 2), Fraction(1, 3)]


@dataclass
class Config:
    samples: int = 2000
    seed: int = 1


def main(cfg: Config) -> dict:
    rng = random.Random(cfg.seed)
    tally: Counter = Counter()
    odd = []
    for _ in range(cfg.samples):
        alg = LVAlgebra(skew3(*(rng.choice(POOL) for _ in range(3))))
        infinite = classify_dim3(alg).description.kind == "family"
        has_block = bool(block_supports(alg))
        tally[(infinite, has_block)] += 1
        if infinite and not has_block:
            odd.append([str(x) for x in skew3_params(alg.matrix)])
    out = {
        "config": asdict(cfg),
        "infinite_with_block": tally[(True, True)],
        "infinite_without_block": tally[(True, False)],
        "finite_with_block": tally[(False, True)],
        "finite_without_block": tally[(False, False)],
        "infinite_without_block_examples": odd[:10],
    }
    print(json.dumps(out, indent=1))
    return out


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    for f, v in asdict(Config()).items():
        ap.add_argument(f"--{f}", type=type(v), default=v)
    main(Config(**vars(ap.parse_args())))
