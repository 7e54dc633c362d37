"""Generate a seeded corpus of planted equivalent pairs, check every witness,
and confirm the dilation invariants agree on each pair.

Prints one summary line per instance family and exits non-zero on the first
disagreement.
"""

import argparse
import random
import sys
from dataclasses import dataclass

from sekit.corpus import planted_chain, planted_conjugate, planted_esse, se_corpus
from sekit.equivalences import chain_to_se, sme_to_esse, verify_esse, verify_se, verify_sme
from sekit.invariants import compare_dilations


@dataclass
class CorpusConfig:
    seed: int = 0
    esse: int = 300
    conjugate: int = 100
    chains: int = 100
    se_pairs: int = 60
    max_dim: int = 4
    max_entry: int = 3


def families(cfg: CorpusConfig):
    rng = random.Random(cfg.seed)
    esse = []
    for _ in range(cfg.esse):
        e, f, w = planted_esse(rng, cfg.max_dim, cfg.max_entry)
        esse.append((e, f, verify_esse(e, f, w)))
    yield "esse", esse
    conj = []
    for _ in range(cfg.conjugate):
        e, f, w = planted_conjugate(rng, cfg.max_dim, cfg.max_entry)
        conj.append((e, f, verify_sme(e, f, w) and verify_esse(e, f, sme_to_esse(e, f, w))))
    yield "conjugate", conj
    chains = []
    for _ in range(cfg.chains):
        chain = planted_chain(rng, rng.randint(1, 4))
        chains.append((chain.left, chain.right, verify_se(chain.left, chain.right, chain_to_se(chain))))
    yield "chain", chains
    se = [(i.left, i.right, verify_se(i.left, i.right, i.witness))
          for i in se_corpus(cfg.seed, cfg.se_pairs)]
    yield "se", se


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--scale", type=float, default=1.0, help="multiply every family size")
    args = parser.parse_args()
    base = CorpusConfig(seed=args.seed)
    cfg = CorpusConfig(seed=args.seed, esse=int(base.esse * args.scale),
                       conjugate=int(base.conjugate * args.scale),
                       chains=int(base.chains * args.scale), se_pairs=int(base.se_pairs * args.scale))
    ok = True
    for name, items in families(cfg):
        rejected = sum(1 for _, _, v in items if not v)
        obstructed = [compare_dilations(e, f) for e, f, _ in items]
        bad = [c for c in obstructed if not c]
        print(f"{name:10s} instances={len(items):4d} rejected={rejected} obstructed={len(bad)}")
        for c in bad[:3]:
            print(f"  {c.describe()}", file=sys.stderr)
        ok = ok and not rejected and not bad
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
