"""Ranks and integral homology of every shipped fixture, one row per fixture.

    python scripts/fixture_survey.py --max-dim 4 --side left
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass

from monoid_collapse import fixtures
from monoid_collapse.homology import bar_complex_oracle, homology_of_complex
from monoid_collapse.morse import build_resolution, trivialize
from monoid_collapse.nerve import Variant


@dataclass
class SurveyConfig:
    max_dim: int = 4
    side: str = "left"
    with_oracle: bool = True


def survey(cfg):
    rows = []
    for name, make in sorted(fixtures.ALL.items()):
        rs = make()
        t0 = time.perf_counter()
        res = build_resolution(rs, cfg.max_dim + 1, Variant(cfg.side))
        left = res if cfg.side == "left" else build_resolution(rs, cfg.max_dim + 1)
        cx = trivialize(left)
        row = {
            "fixture": name,
            "ranks": res.ranks[: cfg.max_dim + 1],
            "homology": [str(homology_of_complex(cx, n)) for n in range(cfg.max_dim + 1)],
        }
        if cfg.with_oracle and name in fixtures.FINITE:
            bar = bar_complex_oracle(rs, cfg.max_dim + 1)
            row["oracle_agrees"] = all(
                homology_of_complex(bar, n) == homology_of_complex(cx, n)
                for n in range(cfg.max_dim + 1))
        row["seconds"] = round(time.perf_counter() - t0, 3)
        rows.append(row)
    return rows


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-dim", type=int, default=SurveyConfig.max_dim)
    p.add_argument("--side", choices=["left", "right", "bi"], default=SurveyConfig.side)
    p.add_argument("--no-oracle", action="store_true")
    p.add_argument("--json", action="store_true", help="print JSON instead of a table")
    args = p.parse_args()
    cfg = SurveyConfig(args.max_dim, args.side, not args.no_oracle)
    rows = survey(cfg)
    if args.json:
        print(json.dumps({"config": asdict(cfg), "rows": rows}, indent=2, ensure_ascii=False))
        return
    for r in rows:
        extra = "" if "oracle_agrees" not in r else f"  oracle={'ok' if r['oracle_agrees'] else 'MISMATCH'}"
        print(f"{r['fixture']:<17} ranks={r['ranks']}  H={r['homology']}{extra}  ({r['seconds']}s)")


if __name__ == "__main__":
    main()
