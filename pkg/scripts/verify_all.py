"""Run every registered identity up to its configured rank and print a summary table."""
import argparse
import sys
from dataclasses import dataclass, field

from flagmaj.theorems import REGISTRY, verify


@dataclass
class VerifyConfig:
    # rank used when an identity is cheap enough; capped by each entry's own bound
    n_max: int = 6
    workers: int = 1
    only: list = field(default_factory=list)


def run(cfg: VerifyConfig) -> bool:
    ok = True
    for tid, entry in REGISTRY.items():
        if cfg.only and tid not in cfg.only:
            continue
        report = verify(tid, min(cfg.n_max, entry.max_n), workers=cfg.workers)
        ok &= report.passed
        print(f"{tid:9s} {report.status:4s} {report.params:10s} {report.elapsed:7.2f}s  {entry.statement}")
        for w in report.witnesses[:3]:
            print(f"          {w}")
    return ok


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=VerifyConfig.n_max)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("ids", nargs="*")
    a = ap.parse_args()
    sys.exit(0 if run(VerifyConfig(a.n_max, a.workers, [i.upper() for i in a.ids])) else 1)
