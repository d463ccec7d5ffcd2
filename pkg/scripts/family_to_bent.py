"""Build a disjoint-spectra family on Q-shifted supports and concatenate it into a bent function.

The base support is an affine block with nonlinear y-columns, so the members
are nontrivial; the script reports each member's order and linear-structure
dimension, then checks the concatenation.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

import numpy as np

from plateau.bitfn import BooleanFunction, random_invertible
from plateau.classify import classify_plateaued, linear_structures, support_rank
from plateau.construct import affine_block_support, concat_bent, disjoint_family, mm_bent
from plateau.spectral import is_bent
from plateau.textio import format_tt


@dataclass(frozen=True)
class Config:
    n: int = 6
    s: int = 2
    seed: int = 1


def main(cfg: Config) -> None:
    rng = np.random.default_rng(cfg.seed)
    k = (cfg.n - cfg.s) // 2
    if 2 * k + cfg.s != cfg.n or k < 1:
        raise SystemExit("need n - s even and positive")
    cols = [
        BooleanFunction(k, rng.integers(0, 2, 1 << k, dtype=np.uint8)).extend(2 * k, range(k + 1, 2 * k + 1))
        for _ in range(cfg.s)
    ]
    base = affine_block_support(int(rng.integers(1 << (2 * k))), random_invertible(2 * k, cfg.seed), cols)
    duals = [mm_bent(rng.permutation(1 << k).tolist(), None) for _ in range(1 << cfg.s)]
    fam = disjoint_family(base, duals)
    print(f"base support rank {support_rank(base.as_set())} of {cfg.n}")
    for q, f in zip(fam.shifts, fam.members):
        print(f"  q = {q:0{cfg.n}b}  {classify_plateaued(f)}  dim Lambda = {linear_structures(f).dim}  {format_tt(f)}")
    F = concat_bent(fam)
    print(f"concatenation on F_2^{F.n}: bent = {is_bent(F)}")
    print(f"  {format_tt(F)}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", type=int, default=Config.n)
    p.add_argument("--s", type=int, default=Config.s)
    p.add_argument("--seed", type=int, default=Config.seed)
    main(Config(**vars(p.parse_args())))
