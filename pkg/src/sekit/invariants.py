"""Finitely computable invariants of the dilation of a graph correspondence.

The dilation itself is an infinite direct limit and is never built.  What
survives at desk scale is its fingerprint: the Bowen-Franks group
``coker(I - E)``, the K-theory of the Cuntz-Krieger algebra
(``K0 = coker(I - E^T)``, ``K1 = ker(I - E^T)``) and the characteristic
polynomial with its factors of ``t`` removed.  All of these agree for
shift-equivalent matrices, so a disagreement is an obstruction.  Agreement
proves nothing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotRegular
from .matrix import CorrMatrix, StructureFlags, _require_square, classify

IntMatrix = list[list[int]]


def _eye(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


@dataclass(frozen=True)
class SnfResult:
    """``u @ m @ v == d`` with ``u``, ``v`` unimodular and ``d`` diagonal,
    non-negative, each diagonal entry dividing the next."""

    u: tuple[tuple[int, ...], ...]
    v: tuple[tuple[int, ...], ...]
    d: tuple[tuple[int, ...], ...]

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.d[i][i] for i in range(min(len(self.d), len(self.d[0]))))


def smith_normal_form(m) -> SnfResult:
    a = [list(map(int, row)) for row in m]
    rows, cols = len(a), len(a[0])
    u = _eye(rows)
    v = _eye(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for mat in (a, v):
            for row in mat:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row_dst += q * row_src
        for mat in (a, u):
            mat[dst] = [x + q * y for x, y in zip(mat[dst], mat[src])]

    def add_col(src, dst, q):
        for mat in (a, v):
            for row in mat:
                row[dst] += q * row[src]

    for t in range(min(rows, cols)):
        while True:
            nonzero = [(abs(a[i][j]), i, j) for i in range(t, rows)
                       for j in range(t, cols) if a[i][j]]
            if not nonzero:
                break
            _, pi, pj = min(nonzero)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // p))
                    dirty |= a[i][t] != 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // p))
                    dirty |= a[t][j] != 0
            if dirty:
                continue
            # pivot must divide the whole remaining block
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    d = tuple(tuple(r) for r in a)
    if _matmul(_matmul(u, [list(map(int, row)) for row in m]), v) != a:
        raise RuntimeError("Smith normal form self-check failed")
    return SnfResult(tuple(map(tuple, u)), tuple(map(tuple, v)), d)


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group ``Z^free_rank + sum Z/t_i`` in
    invariant-factor form; equality is isomorphism."""

    torsion: tuple[int, ...] = ()
    free_rank: int = 0

    @classmethod
    def from_diagonal(cls, diagonal) -> AbelianGroup:
        diagonal = [abs(x) for x in diagonal]
        return cls(tuple(sorted(x for x in diagonal if x > 1)), sum(1 for x in diagonal if x == 0))

    @property
    def is_trivial(self) -> bool:
        return not self.torsion and not self.free_rank

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def __str__(self) -> str:
        parts = [f"Z/{t}" for t in self.torsion]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def cokernel(m) -> AbelianGroup:
    snf = smith_normal_form(m)
    rows, cols = len(snf.d), len(snf.d[0])
    diag = list(snf.diagonal) + [0] * (rows - min(rows, cols))
    return AbelianGroup.from_diagonal(diag)


def _i_minus(e: CorrMatrix, transpose: bool = False) -> IntMatrix:
    grid = e.T.entries if transpose else e.entries
    n = e.rows
    return [[int(i == j) - grid[i][j] for j in range(n)] for i in range(n)]


def bowen_franks(e: CorrMatrix) -> AbelianGroup:
    _require_square(e)
    return cokernel(_i_minus(e))


def k_theory(e: CorrMatrix) -> tuple[AbelianGroup, int]:
    """``(K0, rank K1)`` of the Cuntz-Krieger algebra of a regular matrix."""
    _require_square(e)
    if not classify(e).regular:
        raise NotRegular("K-theory is only computed for graphs with no sinks or sources")
    k0 = cokernel(_i_minus(e, transpose=True))
    # K1 = ker(I - E^T) is free of rank equal to the nullity, i.e. K0's free rank
    return k0, k0.free_rank


def _berkowitz(a: IntMatrix) -> list[int]:
    """Coefficients of ``det(tI - a)``, leading first, division-free."""
    n = len(a)
    if n == 0:
        return [1]
    corner = a[0][0]
    top = a[0][1:]
    left = [a[i][0] for i in range(1, n)]
    sub = [row[1:] for row in a[1:]]
    inner = _berkowitz(sub)
    col = [1, -corner]
    vec = left
    for _ in range(n - 1):
        col.append(-sum(x * y for x, y in zip(top, vec)))
        vec = [sum(x * y for x, y in zip(row, vec)) for row in sub]
    return [sum(col[i - j] * inner[j] for j in range(min(i, n - 1) + 1)) for i in range(n + 1)]


def char_poly(e: CorrMatrix) -> list[int]:
    _require_square(e)
    return _berkowitz([list(r) for r in e.entries])


def nonzero_char_poly(e: CorrMatrix) -> list[int]:
    """Characteristic polynomial (leading coefficient first) with every factor
    of ``t`` divided out, so the constant term is nonzero."""
    coeffs = char_poly(e)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def format_poly(coeffs: list[int], var: str = "t") -> str:
    deg = len(coeffs) - 1
    terms = []
    for i, c in enumerate(coeffs):
        p = deg - i
        if c == 0:
            continue
        mag = abs(c)
        body = var if p == 1 else f"{var}^{p}" if p else ""
        if body and mag == 1:
            term = body
        else:
            term = f"{mag}{body}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, term))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, term in terms[1:]:
        out += f" {sign} {term}"
    return out


@dataclass(frozen=True)
class InvariantReport:
    """Computable fingerprint of a dilation.  ``k0`` and ``k1_rank`` are None
    when the matrix is not regular."""

    bowen_franks: AbelianGroup
    det_i_minus_a: int
    k0: AbelianGroup | None
    k1_rank: int | None
    nonzero_char_poly: tuple[int, ...]
    flags: StructureFlags


def dilation_invariants(e: CorrMatrix) -> InvariantReport:
    flags = classify(e)
    coeffs = char_poly(e)
    # det(I - E) = det(tI - E) at t = 1
    det = sum(coeffs)
    k0, k1 = k_theory(e) if flags.regular else (None, None)
    return InvariantReport(
        bowen_franks=bowen_franks(e),
        det_i_minus_a=det,
        k0=k0,
        k1_rank=k1,
        nonzero_char_poly=tuple(nonzero_char_poly(e)),
        flags=flags,
    )


@dataclass(frozen=True)
class DilationComparison:
    """``consistent`` is True when no computed invariant separates the two
    matrices; otherwise ``invariant`` names the first one that does."""

    consistent: bool
    invariant: str | None = None
    detail: str | None = None

    def __bool__(self) -> bool:
        return self.consistent

    def describe(self) -> str:
        if self.consistent:
            return "consistent"
        return f"obstructed by {self.invariant}: {self.detail}"


def compare_dilations(e: CorrMatrix, f: CorrMatrix) -> DilationComparison:
    re, rf = dilation_invariants(e), dilation_invariants(f)
    checks = [
        ("bowen_franks", re.bowen_franks, rf.bowen_franks, str),
        ("nonzero_char_poly", re.nonzero_char_poly, rf.nonzero_char_poly,
         lambda c: format_poly(list(c))),
    ]
    if re.flags.regular and rf.flags.regular:
        checks += [("k0", re.k0, rf.k0, str), ("k1", re.k1_rank, rf.k1_rank, lambda r: f"Z^{r}")]
    for name, a, b, show in checks:
        if a != b:
            return DilationComparison(False, name, f"{show(a)} vs {show(b)}")
    return DilationComparison(True)
