"""Seeded generators of planted instances with known witnesses.

Chains come from cyclic products: for matrices ``M1, ..., Mk`` the rotations
``T_i = M_{i+1} ... M_k M_1 ... M_i`` are linked by ESSE witnesses
``(M_{i+1}, rest)``, which yields chains of any length without factoring.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .equivalences import (
    EsseWitness,
    SeWitness,
    SmeWitness,
    SseChain,
    chain_to_se,
    increase_lag,
    reflexive_se,
)
from .matrix import CorrMatrix, permutation_matrix, tensor


def random_matrix(rng: random.Random, rows: int, cols: int, max_entry: int) -> CorrMatrix:
    return CorrMatrix([[rng.randint(0, max_entry) for _ in range(cols)] for _ in range(rows)])


def random_permutation(rng: random.Random, n: int) -> CorrMatrix:
    perm = list(range(n))
    rng.shuffle(perm)
    return permutation_matrix(perm)


def planted_esse(rng: random.Random, max_dim: int = 4, max_entry: int = 3):
    """Random ``(R, S)`` and the pair ``(RS, SR)`` it witnesses."""
    a, b = rng.randint(1, max_dim), rng.randint(1, max_dim)
    r = random_matrix(rng, a, b, max_entry)
    s = random_matrix(rng, b, a, max_entry)
    return tensor(r, s), tensor(s, r), EsseWitness(r, s)


def planted_conjugate(rng: random.Random, max_dim: int = 4, max_entry: int = 3):
    """``(E, P^T E P)`` together with ``P``."""
    n = rng.randint(1, max_dim)
    e = random_matrix(rng, n, n, max_entry)
    p = random_permutation(rng, n)
    return e, tensor(tensor(p.T, e), p), SmeWitness(p)


def cyclic_chain(factors: list[CorrMatrix], length: int) -> SseChain:
    """Chain of ``length`` links through rotations of a cyclic product."""
    k = len(factors)

    def rotation(i: int) -> list[CorrMatrix]:
        return [factors[(i + t) % k] for t in range(k)]

    def product(ms: list[CorrMatrix]) -> CorrMatrix:
        out = ms[0]
        for m in ms[1:]:
            out = tensor(out, m)
        return out

    intermediates, links = [], []
    for i in range(length + 1):
        rot = rotation(i)
        intermediates.append(product(rot))
        if i < length:
            links.append(EsseWitness(rot[0], product(rot[1:])))
    return SseChain(intermediates, links)


def random_cyclic_factors(rng: random.Random, count: int, max_dim: int = 3,
                          max_entry: int = 2) -> list[CorrMatrix]:
    dims = [rng.randint(1, max_dim) for _ in range(count)]
    return [random_matrix(rng, dims[i], dims[(i + 1) % count], max_entry) for i in range(count)]


def planted_chain(rng: random.Random, length: int, max_dim: int = 3,
                  max_entry: int = 2) -> SseChain:
    factors = random_cyclic_factors(rng, max(2, length + 1), max_dim, max_entry)
    return cyclic_chain(factors, length)


@dataclass(frozen=True)
class SeInstance:
    left: CorrMatrix
    right: CorrMatrix
    witness: SeWitness


def planted_se_pair(rng: random.Random, m: int, n: int, max_dim: int = 3,
                    max_entry: int = 1) -> tuple[SeInstance, SeInstance]:
    """Two SE instances ``E ~ F`` (lag m) and ``F ~ G`` (lag n) sharing F.

    Both come from one chain of length ``m + n``; each half is collapsed to a
    single witness.
    """
    chain = planted_chain(rng, m + n, max_dim, max_entry)
    first = SseChain(chain.intermediates[: m + 1], chain.links[:m])
    second = SseChain(chain.intermediates[m:], chain.links[m:])
    return (SeInstance(first.left, first.right, chain_to_se(first)),
            SeInstance(second.left, second.right, chain_to_se(second)))


def se_corpus(seed: int = 0, size: int = 60) -> list[SeInstance]:
    """Mixed corpus of accepted SE witnesses: chain collapses, lag increases
    and reflexive lag-2 witnesses."""
    rng = random.Random(seed)
    out: list[SeInstance] = []
    for i in range(size):
        kind = i % 3
        if kind == 0:
            chain = planted_chain(rng, rng.randint(1, 3))
            out.append(SeInstance(chain.left, chain.right, chain_to_se(chain)))
        elif kind == 1:
            e, f, w = planted_esse(rng, 3, 2)
            lifted = increase_lag(e, f, SeWitness(w.r, w.s, 1), rng.randint(1, 2))
            out.append(SeInstance(e, f, lifted))
        else:
            n = rng.randint(1, 3)
            e = random_matrix(rng, n, n, 2)
            out.append(SeInstance(e, e, reflexive_se(e)))
    return out


CLASSIC = {
    "full_2_shift": CorrMatrix([[1, 1], [1, 1]]),
    "golden_mean": CorrMatrix([[1, 1], [1, 0]]),
    "two": CorrMatrix([[2]]),
    "three": CorrMatrix([[3]]),
    "identity_2": CorrMatrix([[1, 0], [0, 1]]),
}
