"""Labelled non-negative integer matrices standing in for graph correspondences.

A ``CorrMatrix`` with ``row_label == col_label`` models a correspondence over a
single vertex set; a rectangular one connects two vertex sets.  Tensoring
``x ⊗ y`` is the left-to-right product ``x @ y``, so the shift-equivalence
conditions read ``E @ R == R @ F`` and ``S @ E == F @ S``.

Edge direction: ``E[i][j]`` counts edges ``i -> j``.  The opposite convention
is obtained by transposing every input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotSquare

Label = str | None


def _join_labels(a: Label, b: Label) -> Label:
    if a is None and b is None:
        return None
    return f"{'_' if a is None else a}+{'_' if b is None else b}"


@dataclass(frozen=True)
class CorrMatrix:
    """Immutable matrix of Python ints with vertex-set labels on both sides."""

    entries: tuple[tuple[int, ...], ...]
    row_label: Label = None
    col_label: Label = None

    def __init__(
        self,
        entries: Iterable[Iterable[int]],
        row_label: Label = None,
        col_label: Label = None,
    ):
        grid = tuple(tuple(int(v) for v in row) for row in entries)
        if not grid or not grid[0]:
            raise ValueError("a CorrMatrix needs at least one row and one column")
        width = len(grid[0])
        for i, row in enumerate(grid):
            if len(row) != width:
                raise ValueError(f"row {i} has {len(row)} entries, expected {width}")
            for j, v in enumerate(row):
                if v < 0:
                    raise ValueError(f"negative entry {v} at ({i}, {j})")
        object.__setattr__(self, "entries", grid)
        object.__setattr__(self, "row_label", row_label)
        object.__setattr__(self, "col_label", col_label)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols and self.row_label == self.col_label

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: CorrMatrix) -> CorrMatrix:
        return tensor(self, other)

    def __repr__(self) -> str:
        labels = ""
        if self.row_label is not None or self.col_label is not None:
            labels = f", {self.row_label!r}->{self.col_label!r}"
        return f"CorrMatrix({[list(r) for r in self.entries]}{labels})"

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def max_entry(self) -> int:
        return max(max(r) for r in self.entries)

    def relabel(self, row_label: Label, col_label: Label) -> CorrMatrix:
        return CorrMatrix(self.entries, row_label, col_label)

    def transpose(self) -> CorrMatrix:
        return CorrMatrix(zip(*self.entries), self.col_label, self.row_label)

    @property
    def T(self) -> CorrMatrix:
        return self.transpose()


@dataclass(frozen=True)
class InflationSquare:
    """The bipartite inflation ``[[0, R], [S, 0]]`` with its blocks kept apart."""

    r_block: CorrMatrix
    s_block: CorrMatrix

    def __post_init__(self):
        r, s = self.r_block, self.s_block
        if r.rows != s.cols or r.cols != s.rows:
            raise DimensionMismatch(f"R is {r.shape} but S is {s.shape}")
        if r.row_label != s.col_label or r.col_label != s.row_label:
            raise DimensionMismatch("R and S do not run between the same two vertex sets")

    @property
    def size(self) -> int:
        return self.r_block.rows + self.r_block.cols

    @property
    def label(self) -> Label:
        return _join_labels(self.r_block.row_label, self.r_block.col_label)

    def materialize(self) -> CorrMatrix:
        return _antidiagonal(self.r_block, self.s_block, self.label)


@dataclass(frozen=True)
class StructureFlags:
    regular: bool
    full: bool
    nondegenerate: bool


def _check_composable(x: CorrMatrix, y: CorrMatrix) -> None:
    if x.cols != y.rows:
        raise DimensionMismatch(f"cannot tensor {x.shape} with {y.shape}")
    if x.col_label != y.row_label:
        raise DimensionMismatch(
            f"label mismatch: {x.col_label!r} on the left, {y.row_label!r} on the right"
        )


def _require_square(e: CorrMatrix) -> None:
    if not e.is_square:
        raise NotSquare(f"expected a square correspondence, got {e.shape} "
                        f"{e.row_label!r}->{e.col_label!r}")


def tensor(x: CorrMatrix, y: CorrMatrix) -> CorrMatrix:
    """Interior tensor product ``x ⊗ y``, i.e. the integer product ``x · y``."""
    _check_composable(x, y)
    ycols = list(zip(*y.entries))
    out = [[sum(a * b for a, b in zip(row, col)) for col in ycols] for row in x.entries]
    return CorrMatrix(out, x.row_label, y.col_label)


def identity(n: int, label: Label = None) -> CorrMatrix:
    return CorrMatrix(
        [[1 if i == j else 0 for j in range(n)] for i in range(n)], label, label
    )


def zeros(rows: int, cols: int, row_label: Label = None, col_label: Label = None) -> CorrMatrix:
    return CorrMatrix([[0] * cols for _ in range(rows)], row_label, col_label)


def power(e: CorrMatrix, k: int) -> CorrMatrix:
    """``e`` tensored with itself ``k`` times; ``k == 0`` gives the identity."""
    _require_square(e)
    if k < 0:
        raise ValueError("negative tensor power")
    result = identity(e.rows, e.row_label)
    base = e
    # square-and-multiply; products of powers of one matrix commute
    while k:
        if k & 1:
            result = tensor(result, base)
        k >>= 1
        if k:
            base = tensor(base, base)
    return result


def direct_sum(x: CorrMatrix, y: CorrMatrix) -> CorrMatrix:
    top = [list(r) + [0] * y.cols for r in x.entries]
    bottom = [[0] * x.cols + list(r) for r in y.entries]
    return CorrMatrix(
        top + bottom, _join_labels(x.row_label, y.row_label), _join_labels(x.col_label, y.col_label)
    )


def _antidiagonal(upper: CorrMatrix, lower: CorrMatrix, label: Label) -> CorrMatrix:
    a, b = upper.rows, upper.cols
    top = [[0] * a + list(r) for r in upper.entries]
    bottom = [list(r) + [0] * b for r in lower.entries]
    return CorrMatrix(top + bottom, label, label)


def bipartite_inflation(r: CorrMatrix, s: CorrMatrix) -> InflationSquare:
    return InflationSquare(r, s)


def inflation_power(x: InflationSquare, n: int) -> CorrMatrix:
    """``n``-th tensor power of an inflation via the block closed form.

    Even powers are block diagonal, ``diag((RS)^k, (SR)^k)``; odd powers keep
    the anti-diagonal shape with blocks ``(RS)^k R`` and ``(SR)^k S``.
    """
    if n < 1:
        raise ValueError("inflation_power needs n >= 1")
    r, s = x.r_block, x.s_block
    k, odd = divmod(n, 2)
    e_k = power(tensor(r, s), k)
    f_k = power(tensor(s, r), k)
    if odd:
        return _antidiagonal(tensor(e_k, r), tensor(f_k, s), x.label)
    out = direct_sum(e_k, f_k)
    return out.relabel(x.label, x.label)


def col_support(e: CorrMatrix) -> frozenset[int]:
    return frozenset(j for j in range(e.cols) if any(row[j] for row in e.entries))


def row_support(e: CorrMatrix) -> frozenset[int]:
    return frozenset(i for i, row in enumerate(e.entries) if any(row))


def classify(e: CorrMatrix) -> StructureFlags:
    """Full means no zero column (no sources), nondegenerate means no zero row
    (no sinks); regular is both."""
    _require_square(e)
    full = len(col_support(e)) == e.cols
    nondegenerate = len(row_support(e)) == e.rows
    return StructureFlags(regular=full and nondegenerate, full=full, nondegenerate=nondegenerate)


def is_permutation(p: CorrMatrix) -> bool:
    if p.rows != p.cols:
        return False
    if any(v not in (0, 1) for row in p.entries for v in row):
        return False
    return all(sum(row) == 1 for row in p.entries) and all(
        sum(col) == 1 for col in zip(*p.entries)
    )


def permutation_matrix(perm: Sequence[int], row_label: Label = None,
                       col_label: Label = None) -> CorrMatrix:
    """Matrix with a 1 at ``(i, perm[i])`` for every ``i``."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{perm!r} is not a permutation of range({n})")
    return CorrMatrix(
        [[1 if perm[i] == j else 0 for j in range(n)] for i in range(n)], row_label, col_label
    )
