"""Text formats: matrices, certificates and invariant reports.

Matrix format::

    # comments run to end of line
    2 2
    label A A          (optional; "-" stands for an absent label)
    1 1
    1 0

Certificates are JSON documents with a fixed key order (see README for the
grammar).  Loading is strict: unknown keys are rejected and any cached
verdict is only advisory, callers re-verify with :func:`verify_certificate`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Union

from . import __version__
from .equivalences import (
    EsseWitness,
    SeWitness,
    SmeWitness,
    SseChain,
    Verdict,
    verify_esse,
    verify_se,
    verify_sme,
    verify_sse_chain,
)
from .errors import (
    KindMismatch,
    NegativeEntry,
    ParseError,
    SchemaVersionUnsupported,
    ShapeMismatch,
)
from .invariants import InvariantReport, format_poly
from .matrix import CorrMatrix

SCHEMA_VERSION = 1
KINDS = ("esse", "sse-chain", "se", "sme")
_NO_LABEL = "-"

Witness = Union[EsseWitness, SseChain, SeWitness, SmeWitness]


# -- matrices ---------------------------------------------------------------

def _label_token(label: str | None) -> str:
    if label is None:
        return _NO_LABEL
    if not label or label == _NO_LABEL or "#" in label or any(c.isspace() for c in label):
        raise ValueError(f"label {label!r} cannot be written in the matrix format")
    return label


def _parse_int(token: str, line: int, column: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", line, column) from None
    return value


def parse_matrix(text: str) -> CorrMatrix:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            tokens, pos = [], 0
            for tok in body.split():
                pos = body.index(tok, pos)
                tokens.append((tok, pos + 1))
                pos += len(tok)
            lines.append((number, tokens))
    if not lines:
        raise ParseError("empty matrix text")

    labels = None
    number, tokens = lines.pop(0)
    if tokens[0][0] == "label":
        labels = _parse_label(number, tokens)
        if not lines:
            raise ParseError("missing 'rows cols' line", number)
        number, tokens = lines.pop(0)
    if len(tokens) != 2:
        raise ParseError("expected 'rows cols'", number, tokens[0][1])
    rows, cols = (_parse_int(t, number, c) for t, c in tokens)
    if rows < 1 or cols < 1:
        raise ShapeMismatch(f"dimensions must be positive, got {rows} x {cols}", number)
    if lines and lines[0][1][0][0] == "label":
        if labels is not None:
            raise ParseError("duplicate label line", lines[0][0])
        labels = _parse_label(*lines.pop(0))
    labels = labels or (None, None)

    if len(lines) != rows:
        raise ShapeMismatch(f"expected {rows} rows, found {len(lines)}",
                            lines[rows][0] if len(lines) > rows else None)
    grid = []
    for number, tokens in lines:
        if len(tokens) != cols:
            raise ShapeMismatch(f"expected {cols} entries, found {len(tokens)}", number)
        row = []
        for tok, col in tokens:
            v = _parse_int(tok, number, col)
            if v < 0:
                raise NegativeEntry(f"negative entry {v}", number, col)
            row.append(v)
        grid.append(row)
    return CorrMatrix(grid, *labels)


def _parse_label(number: int, tokens) -> tuple[str | None, str | None]:
    if len(tokens) != 3:
        raise ParseError("expected 'label <row_label> <col_label>'", number, tokens[0][1])
    return tuple(None if t == _NO_LABEL else t for t, _ in tokens[1:])


def write_matrix(m: CorrMatrix) -> str:
    out = [f"{m.rows} {m.cols}"]
    if m.row_label is not None or m.col_label is not None:
        out.append(f"label {_label_token(m.row_label)} {_label_token(m.col_label)}")
    out += [" ".join(map(str, row)) for row in m.entries]
    return "\n".join(out) + "\n"


# -- certificates -----------------------------------------------------------

@dataclass(frozen=True)
class CachedVerdict:
    accepted: bool
    toolkit_version: str


@dataclass(frozen=True)
class CertificateFile:
    kind: str
    left: CorrMatrix
    right: CorrMatrix
    witness: Witness
    verdict: CachedVerdict | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown certificate kind {self.kind!r}")
        expected = _WITNESS_TYPES[self.kind]
        if not isinstance(self.witness, expected):
            raise KindMismatch(
                f"kind {self.kind!r} needs a {expected.__name__}, got {type(self.witness).__name__}"
            )


_WITNESS_TYPES = {"esse": EsseWitness, "sse-chain": SseChain, "se": SeWitness, "sme": SmeWitness}
_WITNESS_KEYS = {
    "esse": {"r", "s"},
    "sse-chain": {"intermediates", "links"},
    "se": {"r", "s", "lag"},
    "sme": {"p"},
}
_MATRIX_KEYS = ("row_label", "col_label", "rows", "cols", "entries")


def verify_certificate(cert: CertificateFile) -> Verdict:
    """Re-check a certificate from scratch; the cached verdict is ignored."""
    w = cert.witness
    if cert.kind == "esse":
        return verify_esse(cert.left, cert.right, w)
    if cert.kind == "se":
        return verify_se(cert.left, cert.right, w)
    if cert.kind == "sme":
        return verify_sme(cert.left, cert.right, w)
    if w.left != cert.left or w.right != cert.right:
        return Verdict(False, "chain endpoints = left, right")
    return verify_sse_chain(w)


def with_verdict(cert: CertificateFile) -> CertificateFile:
    v = verify_certificate(cert)
    return CertificateFile(cert.kind, cert.left, cert.right, cert.witness,
                           CachedVerdict(bool(v), __version__))


def _matrix_obj(m: CorrMatrix) -> dict:
    return {"row_label": m.row_label, "col_label": m.col_label,
            "rows": m.rows, "cols": m.cols, "entries": m.to_lists()}


def _witness_obj(kind: str, w) -> dict:
    if kind == "esse":
        return {"r": _matrix_obj(w.r), "s": _matrix_obj(w.s)}
    if kind == "se":
        return {"lag": w.lag, "r": _matrix_obj(w.r), "s": _matrix_obj(w.s)}
    if kind == "sme":
        return {"p": _matrix_obj(w.p)}
    return {"intermediates": [_matrix_obj(t) for t in w.intermediates],
            "links": [_witness_obj("esse", link) for link in w.links]}


def _emit(obj, indent: int = 0) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {_emit(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list):
        if all(isinstance(x, int) and not isinstance(x, bool) for x in obj):
            return "[" + ", ".join(map(str, obj)) + "]"
        if not obj:
            return "[]"
        return "[\n" + ",\n".join(inner + _emit(x, indent + 1) for x in obj) + "\n" + pad + "]"
    return json.dumps(obj)


def write_certificate(cert: CertificateFile) -> bytes:
    doc = {"schema_version": SCHEMA_VERSION, "kind": cert.kind,
           "left": _matrix_obj(cert.left), "right": _matrix_obj(cert.right),
           "witness": _witness_obj(cert.kind, cert.witness)}
    if cert.verdict is not None:
        doc["verdict"] = {"accepted": cert.verdict.accepted,
                          "toolkit_version": cert.verdict.toolkit_version}
    return (_emit(doc) + "\n").encode("utf-8")


def _expect_keys(obj, required, where: str, optional=()) -> None:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    missing = set(required) - obj.keys()
    unknown = obj.keys() - set(required) - set(optional)
    if unknown:
        raise ParseError(f"{where}: unknown field(s) {sorted(unknown)}")
    if missing:
        raise ParseError(f"{where}: missing field(s) {sorted(missing)}")


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _matrix_from(obj, where: str) -> CorrMatrix:
    _expect_keys(obj, _MATRIX_KEYS, where)
    rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
    if not (_is_int(rows) and _is_int(cols)) or rows < 1 or cols < 1:
        raise ShapeMismatch(f"{where}: rows and cols must be positive integers")
    for key in ("row_label", "col_label"):
        if obj[key] is not None and not isinstance(obj[key], str):
            raise ParseError(f"{where}: {key} must be a string or null")
    if not isinstance(entries, list) or len(entries) != rows:
        raise ShapeMismatch(f"{where}: expected {rows} rows of entries")
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != cols:
            raise ShapeMismatch(f"{where}: row {i} should have {cols} entries")
        for j, v in enumerate(row):
            if not _is_int(v):
                raise ParseError(f"{where}: entry ({i}, {j}) is not an integer")
            if v < 0:
                raise NegativeEntry(f"{where}: negative entry {v} at ({i}, {j})")
    return CorrMatrix(entries, obj["row_label"], obj["col_label"])


def _witness_from(kind: str, obj):
    if not isinstance(obj, dict):
        raise ParseError("witness: expected an object")
    keys = set(obj)
    if keys != _WITNESS_KEYS[kind]:
        other = [k for k, ks in _WITNESS_KEYS.items() if ks == keys]
        if other:
            raise KindMismatch(f"kind is {kind!r} but the witness is shaped like {other[0]!r}")
        _expect_keys(obj, _WITNESS_KEYS[kind], "witness")
    if kind == "esse":
        return EsseWitness(_matrix_from(obj["r"], "witness.r"), _matrix_from(obj["s"], "witness.s"))
    if kind == "se":
        lag = obj["lag"]
        if not _is_int(lag) or lag < 1:
            raise ParseError("witness.lag must be a positive integer")
        return SeWitness(_matrix_from(obj["r"], "witness.r"), _matrix_from(obj["s"], "witness.s"), lag)
    if kind == "sme":
        return SmeWitness(_matrix_from(obj["p"], "witness.p"))
    ts, links = obj["intermediates"], obj["links"]
    if not isinstance(ts, list) or not isinstance(links, list) or not links:
        raise ParseError("witness: intermediates and links must be non-empty lists")
    if len(ts) != len(links) + 1:
        raise ShapeMismatch(f"witness: {len(links)} links need {len(links) + 1} intermediates")
    return SseChain(
        [_matrix_from(t, f"witness.intermediates[{i}]") for i, t in enumerate(ts)],
        [_witness_from("esse", link) for link in links],
    )


def parse_certificate(data: bytes | str) -> CertificateFile:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"certificate is not UTF-8: {exc}") from None
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict) or "schema_version" not in doc:
        raise ParseError("missing schema_version")
    version = doc["schema_version"]
    if version != SCHEMA_VERSION or not _is_int(version):
        raise SchemaVersionUnsupported(f"schema_version {version!r} is not supported "
                                       f"(this toolkit reads {SCHEMA_VERSION})")
    _expect_keys(doc, ("schema_version", "kind", "left", "right", "witness"), "certificate",
                 optional=("verdict",))
    kind = doc["kind"]
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}")
    left = _matrix_from(doc["left"], "left")
    right = _matrix_from(doc["right"], "right")
    witness = _witness_from(kind, doc["witness"])
    verdict = None
    if "verdict" in doc:
        v = doc["verdict"]
        _expect_keys(v, ("accepted", "toolkit_version"), "verdict")
        if not isinstance(v["accepted"], bool) or not isinstance(v["toolkit_version"], str):
            raise ParseError("verdict: accepted must be boolean and toolkit_version a string")
        verdict = CachedVerdict(v["accepted"], v["toolkit_version"])
    return CertificateFile(kind, left, right, witness, verdict)


# -- reports ----------------------------------------------------------------

def render_report(r: InvariantReport) -> str:
    def flag(b: bool) -> str:
        return "true" if b else "false"

    absent = "absent (not regular)"
    lines = [
        f"bowen_franks: {r.bowen_franks}",
        f"det_i_minus_a: {r.det_i_minus_a}",
        f"k0: {r.k0 if r.k0 is not None else absent}",
        f"k1_rank: {r.k1_rank if r.k1_rank is not None else absent}",
        f"nonzero_char_poly: {format_poly(list(r.nonzero_char_poly))}",
        f"nonzero_char_poly_coeffs: {' '.join(map(str, r.nonzero_char_poly))}",
        f"regular: {flag(r.flags.regular)}",
        f"full: {flag(r.flags.full)}",
        f"nondegenerate: {flag(r.flags.nondegenerate)}",
    ]
    return "\n".join(lines) + "\n"
