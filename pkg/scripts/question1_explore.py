"""Search random matrices for a support carrying idempotents of both weights.

Sizes <= 4 are covered by the test suite; this looks further out (full
supports of size 5 by default).  Counterexamples are logged, not asserted.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
from dataclasses import asdict, dataclass

from lval.algebra import LVAlgebra
from lval.idempotents import idempotents_with_support
from lval.sampling import random_skew
from lval.skew import skew_to_json


@dataclass
class Config:
    samples: int = 500
    dim: int = 5
    min_support: int = 5
    seed: int = 0


def main(cfg: Config) -> dict:
    rng = random.Random(cfg.seed)
    hits, checked, families = [], 0, 0
    for _ in range(cfg.samples):
        A = random_skew(rng, cfg.dim)
        alg = LVAlgebra(A)
        for k in range(cfg.min_support, cfg.dim + 1):
            for I in itertools.combinations(range(1, cfg.dim + 1), k):
                w0, w1 = idempotents_with_support(alg, I)
                checked += 1
                families += "family" in (w0.status, w1.status)
                if not w0.is_empty and not w1.is_empty:
                    hits.append({"matrix": skew_to_json(A), "support": list(I),
                                 "weight0": w0.to_json(), "weight1": w1.to_json()})
    out = {"config": asdict(cfg), "supports_checked": checked, "with_family": families,
           "counterexamples": len(hits), "examples": hits[:5]}
    print(json.dumps(out, indent=1))
    return out


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    for f, v in asdict(Config()).items():
        ap.add_argument(f"--{f.replace('_', '-')}", type=type(v), default=v)
    main(Config(**vars(ap.parse_args())))
