"""Witnesses for the four equivalence relations, their verifiers, and the
witness transformations between them.

Every converter re-verifies its output before returning it, so a witness
that leaves this module has been checked at least once.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DimensionMismatch, InvalidWitness, NotApplicable, NotPermutation
from .matrix import CorrMatrix, identity, is_permutation, power, tensor


@dataclass(frozen=True)
class EsseWitness:
    r: CorrMatrix
    s: CorrMatrix


@dataclass(frozen=True)
class SeWitness:
    r: CorrMatrix
    s: CorrMatrix
    lag: int

    def __post_init__(self):
        if self.lag < 1:
            raise ValueError("lag must be at least 1")


@dataclass(frozen=True)
class SmeWitness:
    p: CorrMatrix


@dataclass(frozen=True)
class SseChain:
    intermediates: tuple[CorrMatrix, ...]
    links: tuple[EsseWitness, ...]

    def __init__(self, intermediates, links):
        object.__setattr__(self, "intermediates", tuple(intermediates))
        object.__setattr__(self, "links", tuple(links))
        if not self.links:
            raise ValueError("a chain needs at least one link")
        if len(self.intermediates) != len(self.links) + 1:
            raise ValueError(
                f"{len(self.links)} links need {len(self.links) + 1} intermediates, "
                f"got {len(self.intermediates)}"
            )

    @property
    def left(self) -> CorrMatrix:
        return self.intermediates[0]

    @property
    def right(self) -> CorrMatrix:
        return self.intermediates[-1]

    def __len__(self) -> int:
        return len(self.links)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a verification; truthy iff accepted.

    On rejection ``equation`` names the first failing identity and
    ``coordinate`` the first (row, col) where its two sides differ.
    ``link`` is set by chain verification.
    """

    accepted: bool
    equation: str | None = None
    coordinate: tuple[int, int] | None = None
    link: int | None = None
    detail: str | None = field(default=None, compare=False)

    def __bool__(self) -> bool:
        return self.accepted

    def describe(self) -> str:
        if self.accepted:
            return "accepted"
        parts = ["rejected"]
        if self.link is not None:
            parts.append(f"at link {self.link}")
        if self.equation is not None:
            parts.append(f"equation {self.equation}")
        if self.coordinate is not None:
            parts.append(f"fails at {self.coordinate}")
        if self.detail:
            parts.append(f"({self.detail})")
        return " ".join(parts)


ACCEPT = Verdict(True)


def _first_difference(lhs: CorrMatrix, rhs: CorrMatrix) -> tuple[int, int] | None:
    if lhs.shape != rhs.shape:
        raise DimensionMismatch(f"comparing {lhs.shape} with {rhs.shape}")
    for i, (a, b) in enumerate(zip(lhs.entries, rhs.entries)):
        for j, (u, v) in enumerate(zip(a, b)):
            if u != v:
                return i, j
    return None


def _check(equations: list[tuple[str, CorrMatrix, CorrMatrix]]) -> Verdict:
    for name, lhs, rhs in equations:
        at = _first_difference(lhs, rhs)
        if at is not None:
            return Verdict(False, name, at, detail=f"{lhs[at]} != {rhs[at]}")
    return ACCEPT


def _expect_between(m: CorrMatrix, e: CorrMatrix, f: CorrMatrix, name: str) -> None:
    """``m`` must run from the vertex set of ``e`` to that of ``f``."""
    if m.shape != (e.rows, f.rows):
        raise DimensionMismatch(f"{name} is {m.shape}, expected {(e.rows, f.rows)}")
    if m.row_label != e.row_label or m.col_label != f.row_label:
        raise DimensionMismatch(
            f"{name} runs {m.row_label!r}->{m.col_label!r}, "
            f"expected {e.row_label!r}->{f.row_label!r}"
        )


def _expect_square(*ms: CorrMatrix) -> None:
    for m in ms:
        if not m.is_square:
            raise DimensionMismatch(f"expected a square correspondence, got {m.shape}")


def verify_esse(e: CorrMatrix, f: CorrMatrix, w: EsseWitness) -> Verdict:
    _expect_square(e, f)
    _expect_between(w.r, e, f, "R")
    _expect_between(w.s, f, e, "S")
    return _check([("RS = E", tensor(w.r, w.s), e), ("SR = F", tensor(w.s, w.r), f)])


def verify_sse_chain(chain: SseChain) -> Verdict:
    for i, link in enumerate(chain.links):
        v = verify_esse(chain.intermediates[i], chain.intermediates[i + 1], link)
        if not v:
            return Verdict(False, v.equation, v.coordinate, link=i, detail=v.detail)
    return ACCEPT


def verify_se(e: CorrMatrix, f: CorrMatrix, w: SeWitness) -> Verdict:
    _expect_square(e, f)
    _expect_between(w.r, e, f, "R")
    _expect_between(w.s, f, e, "S")
    r, s, m = w.r, w.s, w.lag
    return _check([
        ("E^m = RS", power(e, m), tensor(r, s)),
        ("F^m = SR", power(f, m), tensor(s, r)),
        ("SE = FS", tensor(s, e), tensor(f, s)),
        ("ER = RF", tensor(e, r), tensor(r, f)),
    ])


def verify_sme(e: CorrMatrix, f: CorrMatrix, w: SmeWitness) -> Verdict:
    _expect_square(e, f)
    _expect_between(w.p, e, f, "P")
    if not is_permutation(w.p):
        raise NotPermutation(f"{w.p!r} is not a permutation matrix")
    return _check([("EP = PF", tensor(e, w.p), tensor(w.p, f))])


def _require(verdict: Verdict, what: str) -> None:
    if not verdict:
        raise InvalidWitness(f"{what}: {verdict.describe()}")


def sme_to_esse(e: CorrMatrix, f: CorrMatrix, w: SmeWitness) -> EsseWitness:
    """Conjugacy ``EP = PF`` gives the elementary witness ``(EP, P^T)``."""
    _require(verify_sme(e, f, w), "input SME witness")
    out = EsseWitness(tensor(e, w.p), w.p.T)
    _require(verify_esse(e, f, out), "converted ESSE witness")
    return out


def esse_to_sme_if_invertible(e: CorrMatrix, f: CorrMatrix, w: EsseWitness) -> SmeWitness | None:
    """Upgrade to a conjugacy when either block is a permutation, else None.

    If ``R`` is a permutation then ``ER = RSR = RF``; if ``S`` is, then
    ``E S^T = R = S^T F``.
    """
    _require(verify_esse(e, f, w), "input ESSE witness")
    if is_permutation(w.r):
        out = SmeWitness(w.r)
    elif is_permutation(w.s):
        out = SmeWitness(w.s.T)
    else:
        return None
    _require(verify_sme(e, f, out), "upgraded SME witness")
    return out


def esse_as_se(e: CorrMatrix, f: CorrMatrix, w: EsseWitness) -> SeWitness:
    _require(verify_esse(e, f, w), "input ESSE witness")
    return SeWitness(w.r, w.s, 1)


def chain_to_se(chain: SseChain) -> SeWitness:
    """Collapse a chain of ``n`` links into one shift equivalence of lag ``n``:
    ``R = R1...Rn`` and ``S = Sn...S1``."""
    _require(verify_sse_chain(chain), "input chain")
    r = chain.links[0].r
    s = chain.links[0].s
    for link in chain.links[1:]:
        r = tensor(r, link.r)
        s = tensor(link.s, s)
    out = SeWitness(r, s, len(chain))
    _require(verify_se(chain.left, chain.right, out), "composed SE witness")
    return out


def reflexive_se(e: CorrMatrix) -> SeWitness:
    """``E ~ E`` with lag 2 via ``R = S = E``."""
    out = SeWitness(e, e, 2)
    _require(verify_se(e, e, out), "reflexive SE witness")
    return out


def reflexive_esse(e: CorrMatrix) -> EsseWitness:
    """``E ~ E`` via ``R = E`` and ``S = I``."""
    return EsseWitness(e, identity(e.rows, e.row_label))


def increase_lag(e: CorrMatrix, f: CorrMatrix, w: SeWitness, k: int) -> SeWitness:
    if k < 0:
        raise ValueError("k must be non-negative")
    _require(verify_se(e, f, w), "input SE witness")
    out = SeWitness(w.r, tensor(w.s, power(e, k)), w.lag + k)
    _require(verify_se(e, f, out), "lag-increased SE witness")
    return out


def compose_se(e: CorrMatrix, f: CorrMatrix, g: CorrMatrix,
               w1: SeWitness, w2: SeWitness) -> SeWitness:
    """Transitivity: ``E ~ F`` (lag m, via R, S) and ``F ~ G`` (lag n, via V, U)
    give ``E ~ G`` with lag ``mn + m`` via ``R V (U V)^(m-1)`` and ``U S``."""
    _require(verify_se(e, f, w1), "first SE witness")
    _require(verify_se(f, g, w2), "second SE witness")
    r, s, m = w1.r, w1.s, w1.lag
    v, u = w2.r, w2.s
    uv = tensor(u, v)
    r_new = tensor(tensor(r, v), power(uv, m - 1))
    out = SeWitness(r_new, tensor(u, s), m * w2.lag + m)
    _require(verify_se(e, g, out), "composed SE witness")
    return out


def compose_esse_via_invertible(e: CorrMatrix, f: CorrMatrix, g: CorrMatrix,
                                w1: EsseWitness, w2: EsseWitness) -> EsseWitness:
    """Compose ``E ~ F`` via (R, S) with ``F ~ G`` via (T, Z) when Z or R is
    a permutation.

    Z invertible: ``(R Z^T, Z S)``.  R invertible: ``(R T, Z R^T)``.
    """
    _require(verify_esse(e, f, w1), "first ESSE witness")
    _require(verify_esse(f, g, w2), "second ESSE witness")
    r, s = w1.r, w1.s
    t, z = w2.r, w2.s
    if is_permutation(z):
        out = EsseWitness(tensor(r, z.T), tensor(z, s))
    elif is_permutation(r):
        out = EsseWitness(tensor(r, t), tensor(z, r.T))
    else:
        raise NotApplicable("neither Z (second link's S) nor R (first link's R) is a permutation")
    _require(verify_esse(e, g, out), "composed ESSE witness")
    return out
