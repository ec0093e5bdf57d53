"""Run the randomized property suites and report violations and wall-clock time."""

import argparse
import random
import time
from dataclasses import dataclass, field

from dgext.scenarios import SUITES, run_suite


@dataclass
class Config:
    instances: int = 200
    seed: int = 0
    suites: list[str] = field(default_factory=lambda: list(SUITES))


def main(cfg: Config) -> int:
    failed = 0
    print(f"{'suite':<14}{'instances':>10}{'violations':>12}{'seconds':>10}")
    for name in cfg.suites:
        t0 = time.perf_counter()
        res = run_suite(name, cfg.instances, random.Random(f"{cfg.seed}:{name}"))
        dt = time.perf_counter() - t0
        failed += res.violations
        print(f"{name:<14}{res.instances:>10}{res.violations:>12}{dt:>10.1f}")
    return 1 if failed else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--instances", type=int, default=Config.instances)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--suite", action="append", choices=list(SUITES), dest="suites")
    a = ap.parse_args()
    raise SystemExit(main(Config(a.instances, a.seed, a.suites or list(SUITES))))
