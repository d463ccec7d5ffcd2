"""Sweep constructed plateaued functions and tabulate their spectral value counts.

Each row reports how many functions were built for (n, s), how many matched
the predicted (zero, +amp, -amp) counts, and how many had nontrivial supports.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

import numpy as np

from plateau.bitfn import BooleanFunction, apply_affine, random_invertible
from plateau.classify import classify_plateaued
from plateau.construct import construct_thm41
from plateau.spectral import table1_counts, wht


@dataclass(frozen=True)
class Config:
    cases: tuple[tuple[int, int], ...] = ((5, 1), (6, 2), (7, 1), (7, 3), (8, 2), (9, 1))
    per_case: int = 100
    seed: int = 0
    shift: bool = True


def random_member(n: int, s: int, rng) -> BooleanFunction:
    k = (n - s) // 2
    psi = rng.permutation(1 << k).tolist()
    t = BooleanFunction(k, rng.integers(0, 2, 1 << k, dtype=np.uint8))
    ts = [BooleanFunction(k, rng.integers(0, 2, 1 << k, dtype=np.uint8)) for _ in range(s)]
    M = random_invertible(2 * k, int(rng.integers(1 << 31)))
    return construct_thm41(psi, t, ts, int(rng.integers(1 << (2 * k))), M)


def main(cfg: Config) -> None:
    rng = np.random.default_rng(cfg.seed)
    print(f"{'n':>3} {'s':>3} {'built':>6} {'match':>6} {'nontriv':>8}")
    for n, s in cfg.cases:
        match = nontrivial = 0
        for _ in range(cfg.per_case):
            f = random_member(n, s, rng)
            if cfg.shift:
                A = random_invertible(n, int(rng.integers(1 << 31)))
                f = apply_affine(f, A, int(rng.integers(1 << n)), int(rng.integers(1 << n)), int(rng.integers(2)))
            w = wht(f).values
            amp = 1 << ((n + s) // 2)
            got = (int(np.sum(w == 0)), int(np.sum(w == amp)), int(np.sum(w == -amp)))
            match += got == table1_counts(n, s, f(0))
            nontrivial += classify_plateaued(f).kind == "nontrivial"
        print(f"{n:>3} {s:>3} {cfg.per_case:>6} {match:>6} {nontrivial:>8}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--per-case", type=int, default=Config.per_case)
    p.add_argument("--seed", type=int, default=Config.seed)
    p.add_argument("--no-shift", dest="shift", action="store_false")
    a = p.parse_args()
    main(Config(per_case=a.per_case, seed=a.seed, shift=a.shift))
