"""``sekit`` command line.

Exit codes: 0 accepted / consistent / found, 1 rejected / obstructed / not
found, 2 usage or I/O error, 3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .certificates import (
    CertificateFile,
    parse_certificate,
    parse_matrix,
    render_report,
    verify_certificate,
    with_verdict,
    write_certificate,
)
from .equivalences import (
    SeWitness,
    chain_to_se,
    compose_esse_via_invertible,
    compose_se,
    sme_to_esse,
)
from .errors import BoundsTooLarge, InvalidWitness, NotApplicable, SekitError
from .invariants import compare_dilations, dilation_invariants
from .search import DEFAULT_BUDGET, SearchBounds, search_esse, search_se, search_sme

OK, NO, USAGE, BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_matrix(path: str):
    return parse_matrix(_read_text(path))


def _load_cert(path: str) -> CertificateFile:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_certificate(data)


def _emit_cert(cert: CertificateFile, out: str | None) -> None:
    data = write_certificate(with_verdict(cert))
    if out is None:
        sys.stdout.write(data.decode())
        return
    try:
        Path(out).write_bytes(data)
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc.strerror}") from None
    print(f"certificate written to {out}")


def _default_budget() -> int:
    raw = os.environ.get("SEKIT_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"SEKIT_BUDGET must be an integer, got {raw!r}") from None


def cmd_check(args) -> int:
    cert = _load_cert(args.cert)
    if cert.kind != args.kind:
        raise UsageError(f"--kind {args.kind} but the certificate is of kind {cert.kind}")
    left = _load_matrix(args.left) if args.left else cert.left
    right = _load_matrix(args.right) if args.right else cert.right
    verdict = verify_certificate(CertificateFile(cert.kind, left, right, cert.witness))
    print(verdict.describe())
    return OK if verdict else NO


def cmd_search(args) -> int:
    left, right = _load_matrix(args.left), _load_matrix(args.right)
    budget = args.budget if args.budget is not None else _default_budget()
    bounds = SearchBounds(args.max_inner_dim, args.max_entry, args.max_lag, budget)
    if args.kind == "esse":
        w = search_esse(left, right, bounds.max_inner_dim, bounds.max_entry, bounds.budget)
    elif args.kind == "se":
        w = search_se(left, right, bounds.max_lag, bounds.max_entry, bounds.budget,
                      max_inner_dim=bounds.max_inner_dim)
    else:
        w = search_sme(left, right)
    if w is None:
        print(f"no {args.kind} witness within bounds {bounds}", file=sys.stderr)
        print("not found")
        return NO
    _emit_cert(CertificateFile(args.kind, left, right, w), args.out)
    return OK


def cmd_convert(args) -> int:
    cert = _load_cert(args.cert)
    wanted = {"sme": "sme", "chain": "sse-chain"}[args.from_]
    if cert.kind != wanted:
        raise UsageError(f"--from {args.from_} but the certificate is of kind {cert.kind}")
    if args.from_ == "sme":
        w = sme_to_esse(cert.left, cert.right, cert.witness)
        if args.to == "esse":
            out = CertificateFile("esse", cert.left, cert.right, w)
        else:
            out = CertificateFile("se", cert.left, cert.right, SeWitness(w.r, w.s, 1))
    else:
        if args.to != "se":
            raise UsageError("a chain converts only to se")
        out = CertificateFile("se", cert.left, cert.right, chain_to_se(cert.witness))
    return _checked_emit(out, args.out)


def _checked_emit(cert: CertificateFile, out: str | None) -> int:
    verdict = verify_certificate(cert)
    if not verdict:
        print(f"refusing to write a rejected certificate: {verdict.describe()}", file=sys.stderr)
        return NO
    _emit_cert(cert, out)
    return OK


def _as_se(cert: CertificateFile) -> SeWitness:
    if cert.kind == "se":
        return cert.witness
    if cert.kind == "esse":
        return SeWitness(cert.witness.r, cert.witness.s, 1)
    if cert.kind == "sse-chain":
        return chain_to_se(cert.witness)
    raise UsageError(f"cannot compose a {cert.kind} certificate as a shift equivalence")


def cmd_compose(args) -> int:
    c1, c2 = _load_cert(args.cert1), _load_cert(args.cert2)
    if c1.right != c2.left:
        raise UsageError("the first certificate's right matrix differs from the second's left")
    e, f, g = c1.left, c1.right, c2.right
    if args.kind == "se":
        w = compose_se(e, f, g, _as_se(c1), _as_se(c2))
        out = CertificateFile("se", e, g, w)
    else:
        for c in (c1, c2):
            if c.kind != "esse":
                raise UsageError(f"--kind esse needs esse certificates, got {c.kind}")
        try:
            w = compose_esse_via_invertible(e, f, g, c1.witness, c2.witness)
        except NotApplicable as exc:
            print(f"not applicable: {exc}")
            return NO
        out = CertificateFile("esse", e, g, w)
    return _checked_emit(out, args.out)


def cmd_invariants(args) -> int:
    for i, path in enumerate(args.files):
        if len(args.files) > 1:
            print(("" if i == 0 else "\n") + f"== {path}")
        sys.stdout.write(render_report(dilation_invariants(_load_matrix(path))))
    return OK


def cmd_compare(args) -> int:
    result = compare_dilations(_load_matrix(args.left), _load_matrix(args.right))
    print(result.describe())
    return OK if result else NO


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sekit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="re-verify a certificate")
    p.add_argument("--kind", required=True, choices=["esse", "sse-chain", "se", "sme"])
    p.add_argument("--cert", required=True)
    p.add_argument("--left", help="matrix file overriding the certificate's left matrix")
    p.add_argument("--right", help="matrix file overriding the certificate's right matrix")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("search", help="bounded exhaustive witness search")
    p.add_argument("--kind", required=True, choices=["esse", "se", "sme"])
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--max-inner-dim", type=int, default=SearchBounds.max_inner_dim)
    p.add_argument("--max-entry", type=int, default=SearchBounds.max_entry)
    p.add_argument("--max-lag", type=int, default=SearchBounds.max_lag)
    p.add_argument("--budget", type=int, default=None,
                   help=f"candidate budget (default $SEKIT_BUDGET or {DEFAULT_BUDGET})")
    p.add_argument("--out", help="certificate path (default: standard output)")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("convert", help="turn an sme or chain certificate into esse / se")
    p.add_argument("--from", dest="from_", required=True, choices=["sme", "chain"])
    p.add_argument("--to", required=True, choices=["esse", "se"])
    p.add_argument("--cert", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("compose", help="compose two certificates E~F and F~G")
    p.add_argument("--kind", required=True, choices=["esse", "se"])
    p.add_argument("--cert1", required=True)
    p.add_argument("--cert2", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("invariants", help="print the invariant report of each matrix")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("compare-dilations", help="look for an invariant separating two matrices")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BoundsTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BUDGET
    except InvalidWitness as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return NO
    except (UsageError, SekitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
