"""Shape sweeps: the subset-class products and the exact-class distributions."""
import argparse
import sys
from dataclasses import dataclass

from flagmaj.theorems import conjecture_cf2, conjecture_equal_classes


@dataclass
class SweepConfig:
    product_n_max: int = 15
    classes_n_max: int = 5
    workers: int = 1


def run(cfg: SweepConfig) -> bool:
    reports = [conjecture_cf2(cfg.product_n_max),
               conjecture_equal_classes(cfg.classes_n_max, cfg.workers)]
    for r in reports:
        print(f"{r.theorem_id} {r.status} {r.params} ({r.elapsed:.2f}s)")
        for w in r.witnesses:
            print("  witness:", w)
        for note in r.notes:
            print("  note:", note)
    return all(r.passed for r in reports)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--product-n-max", type=int, default=SweepConfig.product_n_max)
    ap.add_argument("--classes-n-max", type=int, default=SweepConfig.classes_n_max)
    ap.add_argument("--workers", type=int, default=1)
    a = ap.parse_args()
    sys.exit(0 if run(SweepConfig(a.product_n_max, a.classes_n_max, a.workers)) else 1)
