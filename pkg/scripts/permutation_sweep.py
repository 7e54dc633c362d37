"""Compare bounded SE search with SME (permutation conjugacy) on every pair
of permutation matrices up to a given size and report agreement counts."""

import argparse
import itertools
import time
from dataclasses import dataclass

from sekit.matrix import permutation_matrix
from sekit.search import search_se, search_sme


@dataclass
class SweepConfig:
    max_size: int = 4
    max_lag: int = 4
    max_entry: int = 1


def run(cfg: SweepConfig) -> dict:
    perms = [permutation_matrix(p) for n in range(1, cfg.max_size + 1)
             for p in itertools.permutations(range(n))]
    counts = {"pairs": 0, "both": 0, "neither": 0, "se_only": 0, "sme_only": 0}
    start = time.perf_counter()
    for p, q in itertools.product(perms, repeat=2):
        se = search_se(p, q, max_lag=cfg.max_lag, max_entry=cfg.max_entry) is not None
        sme = search_sme(p, q) is not None
        counts["pairs"] += 1
        key = {(True, True): "both", (False, False): "neither",
               (True, False): "se_only", (False, True): "sme_only"}[se, sme]
        counts[key] += 1
    counts["seconds"] = round(time.perf_counter() - start, 2)
    return counts


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-size", type=int, default=SweepConfig.max_size)
    parser.add_argument("--max-lag", type=int, default=SweepConfig.max_lag)
    parser.add_argument("--max-entry", type=int, default=SweepConfig.max_entry)
    args = parser.parse_args()
    counts = run(SweepConfig(args.max_size, args.max_lag, args.max_entry))
    for key, value in counts.items():
        print(f"{key}: {value}")
    raise SystemExit(0 if counts["se_only"] == counts["sme_only"] == 0 else 1)


if __name__ == "__main__":
    main()
