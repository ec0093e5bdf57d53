"""How often the random instance families exercise the interesting cases.

A property suite that only ever sees split extensions or vanishing Ext^2
proves little; this counts nonzero Ψ classes, nonzero Ext^2 groups and
nonzero truncation domains.
"""

import argparse
import random
from dataclasses import dataclass

from dgext.extensions import extension_from_cycle, psi, random_cycle, truncation_map_is_injective_check
from dgext.resolutions import dimension_shift_yext, ext
from dgext.scenarios import _graded_projective_pair, prop42_data, theorem_a_pair


@dataclass
class Config:
    instances: int = 50
    seed: int = 0


def _char(k: int) -> int:
    return 2 if k % 2 == 0 else 3


def nonzero_psi(cfg: Config) -> int:
    rng = random.Random(cfg.seed)
    hits = 0
    for k in range(cfg.instances):
        _, q, n = _graded_projective_pair(rng, _char(k))
        hits += not psi(extension_from_cycle(random_cycle(q, n, rng))).is_zero()
    return hits


def nonzero_ext2(cfg: Config) -> tuple[int, int]:
    rng = random.Random(cfg.seed)
    hits = mism = 0
    for k in range(cfg.instances):
        m, n = theorem_a_pair(rng, _char(k))
        a = ext(m, n, 2).format_invariants()
        hits += bool(a)
        mism += a != dimension_shift_yext(m, n, 2).format_invariants()
    return hits, mism


def nonzero_truncation_domain(cfg: Config) -> int:
    rng = random.Random(cfg.seed)
    hits = 0
    for _ in range(cfg.instances):
        m, n, level = prop42_data(rng)
        hits += not truncation_map_is_injective_check(m, n, level, samples=1).domain_is_zero
    return hits


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--instances", type=int, default=Config.instances)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args()
    cfg = Config(a.instances, a.seed)
    print(f"nonzero Ψ classes:          {nonzero_psi(cfg)}/{cfg.instances}")
    hits, mism = nonzero_ext2(cfg)
    print(f"nonzero Ext^2:              {hits}/{cfg.instances}, {mism} mismatches")
    print(f"nonzero truncation domains: {nonzero_truncation_domain(cfg)}/{cfg.instances}")
