"""Print every check of every built-in worked example."""

import argparse
from dataclasses import dataclass

from dgext.scenarios import EXAMPLES, verify_example


@dataclass
class Config:
    seed: int = 0
    samples: int | None = None


def main(cfg: Config) -> int:
    ok = True
    for name in EXAMPLES:
        rep = verify_example(name, seed=cfg.seed, samples=cfg.samples)
        ok &= rep.passed
        print(f"{name}: {'PASS' if rep.passed else 'FAIL'}")
        for c in rep.checks:
            print(f"  [{'ok' if c.passed else 'FAIL'}] {c.claim}: {c.observed}")
    return 0 if ok else 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=None)
    a = ap.parse_args()
    raise SystemExit(main(Config(a.seed, a.samples)))
