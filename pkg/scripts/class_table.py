"""Print length and flag-major distributions of every exact inverse descent class of B_n."""
import argparse
from dataclasses import dataclass

from flagmaj.classes import equal_distributions, group_tallies, mask_to_set
from flagmaj.perm import StatKind
from flagmaj.qseries import ZERO, shape


@dataclass
class TableConfig:
    n: int = 3
    workers: int = 1


def run(cfg: TableConfig):
    stats = [StatKind.LEN_B, StatKind.FMAJ]
    T = group_tallies(cfg.n, stats, workers=cfg.workers)
    by_len = equal_distributions(cfg.n, StatKind.LEN_B, tallies=T)
    by_fmaj = equal_distributions(cfg.n, StatKind.FMAJ, tallies=T)
    for mask in sorted(by_len, key=lambda s: (bin(s).count("1"), sorted(mask_to_set(s)))):
        p = by_len[mask]
        sym, uni = shape(p)
        same = "=" if p == by_fmaj.get(mask, ZERO) else "!="
        M = ",".join(map(str, sorted(mask_to_set(mask))))
        print(f"M={{{M}}}  len_B {same} fmaj  sym={int(sym)} uni={int(uni)}  {p}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("n", type=int, nargs="?", default=TableConfig.n)
    ap.add_argument("--workers", type=int, default=1)
    a = ap.parse_args()
    run(TableConfig(a.n, a.workers))
