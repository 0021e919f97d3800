"""Rank of the recursion-operator hierarchy against the closed form, order by order.

    python3 scripts/count_table.py --max-order 6 --jobs 4
"""
import argparse
import time
from dataclasses import dataclass

from heatsym.symmetry import dependency_total, enumerate_words, independent_count


@dataclass
class Config:
    max_order: int = 5
    mode: str = "nondecreasing"
    jobs: int = 1


def run(cfg: Config):
    print(f"{'n':>2} {'words':>7} {'rank':>6} {'N(n)':>6} {'deps':>6} {'secs':>7}")
    for n in range(cfg.max_order + 1):
        start = time.perf_counter()
        res = independent_count(n, mode=cfg.mode, jobs=cfg.jobs)
        secs = time.perf_counter() - start
        flag = "" if res.agree else "  MISMATCH"
        print(f"{n:>2} {len(enumerate_words(n, cfg.mode)):>7} {res.enumerated_rank:>6} "
              f"{res.formula_value:>6} {dependency_total(n):>6} {secs:>7.2f}{flag}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-order", type=int, default=Config.max_order)
    ap.add_argument("--mode", choices=("nondecreasing", "all"), default=Config.mode)
    ap.add_argument("--jobs", type=int, default=Config.jobs)
    a = ap.parse_args()
    run(Config(a.max_order, a.mode, a.jobs))
