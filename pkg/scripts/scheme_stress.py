"""Run the collapsing-scheme verifier over growing truncations and report
how many cells each law was checked on and how long it took.

    python scripts/scheme_stress.py --max-length 7 --variant bi
"""

import argparse
import time
from dataclasses import dataclass, field

from monoid_collapse import fixtures
from monoid_collapse.collapsing import Truncation, verify_scheme
from monoid_collapse.nerve import Variant


@dataclass
class StressConfig:
    max_dim: int = 3
    lengths: list = field(default_factory=lambda: [3, 5, 7])
    variant: str = "bi"
    samples: int = 50
    paths: int = 25
    seed: int = 0
    only: list | None = None


def run(cfg):
    failures = 0
    for name, make in sorted(fixtures.ALL.items()):
        if cfg.only and name not in cfg.only:
            continue
        for length in cfg.lengths:
            t0 = time.perf_counter()
            report = verify_scheme(make(), Truncation(cfg.max_dim, length), Variant(cfg.variant),
                                   samples=cfg.samples, paths=cfg.paths, seed=cfg.seed)
            dt = time.perf_counter() - t0
            bad = [c for c in report.checks if not c.ok]
            failures += bool(bad)
            counts = " ".join(f"{c.name}={c.checked}" for c in report.checks[:3])
            status = "ok" if not bad else "FAIL " + "; ".join(f"{c.name}: {c.witness}" for c in bad)
            print(f"{name:<17} L={length}  {counts}  {dt:6.2f}s  {status}")
    return failures


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-dim", type=int, default=3)
    p.add_argument("--max-length", type=int, default=7)
    p.add_argument("--variant", choices=[v.value for v in Variant], default="bi")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--only", nargs="*", help="fixture names to include")
    args = p.parse_args()
    cfg = StressConfig(max_dim=args.max_dim, lengths=list(range(3, args.max_length + 1, 2)),
                       variant=args.variant, seed=args.seed, only=args.only)
    raise SystemExit(1 if run(cfg) else 0)


if __name__ == "__main__":
    main()
