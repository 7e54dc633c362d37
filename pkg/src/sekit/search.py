"""Bounded exhaustive search for equivalence witnesses.

Candidates are visited in a fixed lexicographic order (lag ascending, then
R row-major, then S row-major) and the first accepted witness is returned,
so results and certificates are reproducible.

Only R is enumerated.  For a fixed R every column of S must solve
``R s = (RS)[:, j]`` and every row must solve ``s R = (SR)[i, :]``; both
candidate sets are found by one vectorised pass over all short vectors, and
S is then assembled row by row with column-prefix pruning.  Every returned
witness is passed through the matching verifier before it leaves.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .equivalences import (
    EsseWitness,
    SeWitness,
    SmeWitness,
    verify_esse,
    verify_se,
    verify_sme,
)
from .errors import BoundsTooLarge, DimensionMismatch, InvalidWitness
from .matrix import CorrMatrix, permutation_matrix, power

DEFAULT_BUDGET = 10**8
MAX_SME_SIZE = 8
# elements per vectorised block; keeps peak memory around a few hundred MB
_BLOCK_ELEMENTS = 1 << 22
_INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class SearchBounds:
    max_inner_dim: int = 4
    max_entry: int = 3
    max_lag: int = 6
    budget: int = DEFAULT_BUDGET


def _all_vectors(length: int, k: int) -> np.ndarray:
    """Every vector in ``{0..k-1}^length`` in lexicographic order."""
    return np.array(list(itertools.product(range(k), repeat=length)), dtype=np.int64).reshape(
        -1, length
    )


def _decode(start: int, stop: int, a: int, b: int, k: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    weights = k ** np.arange(a * b - 1, -1, -1, dtype=np.int64)
    return ((idx[:, None] // weights[None, :]) % k).reshape(-1, a, b)


def _as_array(grid, dtype) -> np.ndarray:
    return np.array([list(r) for r in grid], dtype=dtype)


class _Factorizer:
    """Finds the lex-least ``(R, S)`` with ``RS = P``, ``SR = Q`` and entries
    below ``k``, optionally also requiring ``ER = RF`` and ``SE = FS``."""

    def __init__(self, a: int, b: int, k: int, e=None, f=None):
        self.a, self.b, self.k = a, b, k
        self.e, self.f = e, f
        self.total = k ** (a * b)
        self.cols_b = _all_vectors(b, k)  # candidate columns of S
        self.rows_a = _all_vectors(a, k)  # candidate rows of S
        self._survivors: np.ndarray | None = None
        if e is not None:
            big = max(max(map(max, e)), max(map(max, f)), 1) * max(a, b) * k
            self.dtype = np.int64 if big < _INT64_SAFE else object
            self.e_arr = _as_array(e, self.dtype)
            self.f_arr = _as_array(f, self.dtype)

    def _blocks(self) -> Iterator[np.ndarray]:
        per_r = self.a * (self.a * len(self.cols_b) + self.b * len(self.rows_a)) + 1
        step = max(1, _BLOCK_ELEMENTS // per_r)
        for start in range(0, self.total, step):
            rs = _decode(start, min(start + step, self.total), self.a, self.b, self.k)
            if self.e is not None:
                rs = rs[self._intertwines(rs)]
            if len(rs):
                yield rs

    def _intertwines(self, rs: np.ndarray) -> np.ndarray:
        r = rs.astype(self.dtype)
        return np.all(self.e_arr @ r == r @ self.f_arr, axis=(1, 2))

    def _r_blocks(self) -> Iterator[np.ndarray]:
        # intertwining does not depend on the lag, so cache small survivor sets
        if self.e is None or self.total > (1 << 20):
            yield from self._blocks()
            return
        if self._survivors is None:
            found = list(self._blocks())
            self._survivors = (np.concatenate(found) if found
                               else np.zeros((0, self.a, self.b), dtype=np.int64))
        step = max(1, _BLOCK_ELEMENTS // (self.a * self.a * len(self.cols_b) + 1))
        for start in range(0, len(self._survivors), step):
            yield self._survivors[start:start + step]

    def solve(self, p, q) -> tuple[list[list[int]], list[list[int]]] | None:
        a, b, k = self.a, self.b, self.k
        cap = (k - 1) ** 2
        if max(map(max, p)) > b * cap or max(map(max, q)) > a * cap:
            return None
        p_arr = np.array(p, dtype=np.int64)
        q_arr = np.array(q, dtype=np.int64)
        for rs in self._r_blocks():
            # (N, a, #cols) products R s, compared against each column of P
            rv = rs @ self.cols_b.T
            col_ok = np.all(rv[:, :, None, :] == p_arr[None, :, :, None], axis=1)
            keep = col_ok.any(axis=-1).all(axis=-1)
            if not keep.any():
                continue
            rs, col_ok = rs[keep], col_ok[keep]
            wr = self.rows_a[None, :, :] @ rs
            row_ok = np.all(wr[:, None, :, :] == q_arr[None, :, None, :], axis=-1)
            keep = row_ok.any(axis=-1).all(axis=-1)
            for n in np.flatnonzero(keep):
                r = rs[n].tolist()
                s = self._assemble_s(r, col_ok[n], row_ok[n])
                if s is not None:
                    return r, s
        return None

    def _assemble_s(self, r, col_ok, row_ok) -> list[list[int]] | None:
        b = self.b
        row_cands = [self.rows_a[row_ok[i]].tolist() for i in range(b)]
        prefixes = [set() for _ in range(self.a)]
        for j in range(self.a):
            for col in self.cols_b[col_ok[j]].tolist():
                for depth in range(1, b + 1):
                    prefixes[j].add(tuple(col[:depth]))
        chosen: list[list[int]] = []

        def fits(row) -> bool:
            return all(tuple(c[j] for c in chosen) + (row[j],) in prefixes[j]
                       for j in range(self.a))

        def walk(i) -> bool:
            if i == b:
                return self.e is None or self._s_intertwines(chosen)
            for row in row_cands[i]:
                if fits(row):
                    chosen.append(row)
                    if walk(i + 1):
                        return True
                    chosen.pop()
            return False

        return [list(row) for row in chosen] if walk(0) else None

    def _s_intertwines(self, s) -> bool:
        s_arr = np.array(s, dtype=self.dtype)
        return bool(np.all(s_arr @ self.e_arr == self.f_arr @ s_arr))


def _check_budget(size: int, budget: int) -> None:
    if size > budget:
        raise BoundsTooLarge(size, budget)


def _square_pair(e: CorrMatrix, f: CorrMatrix) -> None:
    for m in (e, f):
        if not m.is_square:
            raise DimensionMismatch(f"expected a square correspondence, got {m.shape}")


def _finish(verdict, witness):
    if not verdict:
        raise InvalidWitness(f"search produced a rejected witness: {verdict.describe()}")
    return witness


def search_esse(e: CorrMatrix, f: CorrMatrix, max_inner_dim: int = 4, max_entry: int = 3,
                budget: int = DEFAULT_BUDGET) -> EsseWitness | None:
    """Exhaustive search for ``E = RS``, ``F = SR`` with entries ``<= max_entry``.

    The inner dimension is the size of ``F``; when it exceeds
    ``max_inner_dim`` nothing lies within bounds and None is returned.
    """
    _square_pair(e, f)
    a, b, k = e.rows, f.rows, max_entry + 1
    if b > max_inner_dim:
        return None
    _check_budget(k ** (a * b), budget)
    found = _Factorizer(a, b, k).solve(e.entries, f.entries)
    if found is None:
        return None
    r, s = found
    w = EsseWitness(CorrMatrix(r, e.row_label, f.row_label), CorrMatrix(s, f.row_label, e.row_label))
    return _finish(verify_esse(e, f, w), w)


def search_se(e: CorrMatrix, f: CorrMatrix, max_lag: int = 6, max_entry: int = 3,
              budget: int = DEFAULT_BUDGET, max_inner_dim: int | None = None) -> SeWitness | None:
    """Exhaustive search for a shift equivalence of lag ``1..max_lag``."""
    _square_pair(e, f)
    a, b, k = e.rows, f.rows, max_entry + 1
    if max_inner_dim is not None and b > max_inner_dim:
        return None
    _check_budget(max_lag * k ** (a * b), budget)
    solver = _Factorizer(a, b, k, e.entries, f.entries)
    for lag in range(1, max_lag + 1):
        found = solver.solve(power(e, lag).entries, power(f, lag).entries)
        if found is not None:
            r, s = found
            w = SeWitness(CorrMatrix(r, e.row_label, f.row_label),
                          CorrMatrix(s, f.row_label, e.row_label), lag)
            return _finish(verify_se(e, f, w), w)
    return None


def search_sme(e: CorrMatrix, f: CorrMatrix) -> SmeWitness | None:
    """Try every permutation matrix ``P`` (lexicographic in the images of
    rows) until ``EP = PF``.  Matrices of different sizes are never conjugate."""
    _square_pair(e, f)
    if e.rows != f.rows:
        return None
    n = e.rows
    if n > MAX_SME_SIZE:
        raise BoundsTooLarge(math.factorial(n), math.factorial(MAX_SME_SIZE))
    ea, fa = e.entries, f.entries
    for perm in itertools.permutations(range(n)):
        # (EP)[i][perm[j]] = E[i][j] and (PF)[i][perm[j]] = F[perm[i]][perm[j]]
        if all(ea[i][j] == fa[perm[i]][perm[j]] for i in range(n) for j in range(n)):
            w = SmeWitness(permutation_matrix(perm, e.row_label, f.row_label))
            return _finish(verify_sme(e, f, w), w)
    return None
