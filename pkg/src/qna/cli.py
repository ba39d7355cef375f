"""Command-line front end.

Exit codes: 0 success, 1 definitive failure (invalid presentation, failed
hypothesis, refusal), 2 inconclusive at the configured bounds, 3 malformed
input.  A JSON report is always written, to stdout or to ``--json PATH``.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass

from . import catalog
from .center import affine_center_rank, centers_report, kernel_basis, verify_hypothesis
from .deriv import decompose, hh1_basis
from .errors import DecompositionRefused, NotQNAError, PresentationError, QNAError
from .gy import commutation_matrix, compute_y_elements
from .io import (
    FORMAT,
    derivation_from_json,
    derivation_to_json,
    element_to_json,
    load_json,
    presentation_from_json,
    presentation_to_json,
)
from .ore import validate_presentation

log = logging.getLogger("qna")

OK, FAILED, INCONCLUSIVE, MALFORMED = 0, 1, 2, 3


@dataclass
class RunConfig:
    degree_bound: int | None = None
    nilpotency_bound: int = 16
    search_bound: int = 4
    output: str | None = None


class Malformed(Exception):
    pass


def _load_presentation(path: str):
    try:
        data = load_json(path)
    except (OSError, json.JSONDecodeError) as exc:
        raise Malformed(f"cannot read {path}: {exc}") from exc
    try:
        return presentation_from_json(data)
    except PresentationError as exc:
        raise Malformed(str(exc)) from exc


def _require_valid(P, cfg: RunConfig):
    rep = validate_presentation(P, cfg.nilpotency_bound)
    if not rep.valid:
        raise DecompositionRefused("presentation failed validation: " + json.dumps(rep.failures))
    return rep


def _pipeline(P, cfg: RunConfig):
    _require_valid(P, cfg)
    G = compute_y_elements(P)
    B = commutation_matrix(P, G)
    cert = verify_hypothesis(B, G.s_infinity(), cfg.search_bound)
    return G, B, cert


def cmd_validate(args, cfg):
    P = _load_presentation(args.file)
    rep = validate_presentation(P, cfg.nilpotency_bound)
    return (OK if rep.valid else FAILED), {"validation": rep.to_json()}


def cmd_y_elements(args, cfg):
    P = _load_presentation(args.file)
    _require_valid(P, cfg)
    G = compute_y_elements(P)
    return OK, {"gy": G.to_json(), "commutation_matrix": commutation_matrix(P, G)}


def cmd_center(args, cfg):
    P = _load_presentation(args.file)
    G, B, cert = _pipeline(P, cfg)
    out = {
        "commutation_matrix": B,
        "kernel_basis": kernel_basis(B),
        "torus_center_rank": len(kernel_basis(B)),
        "affine_center_rank": affine_center_rank(B),
        "hypothesis": cert.to_json(),
    }
    if cert.valid:
        out["center"] = centers_report(P, G, cert, B).to_json()
    return OK, out


def cmd_hypothesis(args, cfg):
    P = _load_presentation(args.file)
    _, _, cert = _pipeline(P, cfg)
    if cert.valid:
        code = OK
    else:
        code = FAILED if cert.definitive else INCONCLUSIVE
    return code, {"hypothesis": cert.to_json()}


def cmd_decompose(args, cfg):
    P = _load_presentation(args.file)
    try:
        D = derivation_from_json(P, load_json(args.derivation_file))
    except (OSError, json.JSONDecodeError, PresentationError, KeyError, TypeError) as exc:
        raise Malformed(f"bad derivation file: {exc}") from exc
    G, _, cert = _pipeline(P, cfg)
    res = decompose(P, G, cert, D, cfg.degree_bound)
    return (OK if res.exact else INCONCLUSIVE), {"decomposition": res.to_json()}


def cmd_hh1(args, cfg):
    P = _load_presentation(args.file)
    _, _, cert = _pipeline(P, cfg)
    basis = hh1_basis(P, cert)
    return OK, {
        "rank": len(basis),
        "weight_basis": [k + 1 for k in P.basis_indices()],
        "basis": [derivation_to_json(D) for D in basis],
        "center": {"ell": cert.ell, "z": cert.z_exponents},
    }


def cmd_nf(args, cfg):
    P = _load_presentation(args.file)
    try:
        data = load_json(args.word_file)
        words = data["words"] if isinstance(data, dict) and "words" in data else [data["word"]] if isinstance(data, dict) else data
        words = [[int(i) - 1 for i in w] for w in words]
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise Malformed(f"bad word file: {exc}") from exc
    if any(not 0 <= i < P.N for w in words for i in w):
        raise Malformed("word letters must lie in 1..N")
    return OK, {"normal_forms": [
        {"word": [i + 1 for i in w], "value": element_to_json(P.word(w))} for w in words
    ]}


def cmd_catalog(args, cfg):
    try:
        entry = catalog.get(args.name)
    except KeyError as exc:
        raise Malformed(str(exc.args[0])) from exc
    if args.expected:
        return OK, entry.expected_json()
    return OK, presentation_to_json(entry.presentation)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qna", description="Quantum nilpotent algebra toolkit")
    p.add_argument("--degree-bound", type=int, default=None, help="degree bound for decompose (default: twice the derivation degree plus the largest y degree)")
    p.add_argument("--nilpotency-bound", type=int, default=16)
    p.add_argument("--search-bound", type=int, default=4)
    p.add_argument("--json", dest="output", metavar="PATH", help="write the report here instead of stdout")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    for name, fn, helptext in [
        ("validate", cmd_validate, "check the QNA axioms"),
        ("y-elements", cmd_y_elements, "compute the GY elements"),
        ("center", cmd_center, "centers of the associated quantum torus and affine space"),
        ("hypothesis", cmd_hypothesis, "certify the pivot hypothesis"),
        ("hh1", cmd_hh1, "basis of HH^1 over the center"),
    ]:
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("file", help="presentation JSON ('-' for stdin)")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("decompose", help="split a derivation as inner + homogeneous")
    sp.add_argument("file")
    sp.add_argument("derivation_file")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("nf", help="normal forms of words in the generators")
    sp.add_argument("file")
    sp.add_argument("word_file", help='JSON: {"word": [...]}, {"words": [[...], ...]} or a list of words')
    sp.set_defaults(func=cmd_nf)

    sp = sub.add_parser("catalog", help="emit a catalog presentation")
    sp.add_argument("name", help="one of: " + ", ".join(catalog.names()))
    sp.add_argument("--expected", action="store_true", help="emit the expected-results document instead")
    sp.set_defaults(func=cmd_catalog)
    return p


def _emit(report: dict, cfg: RunConfig) -> None:
    text = json.dumps(report, indent=2)
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    for flag in ("degree_bound", "nilpotency_bound", "search_bound"):
        v = getattr(args, flag)
        if v is not None and v < 1:
            parser.error(f"--{flag.replace('_', '-')} must be >= 1")
    cfg = RunConfig(
        degree_bound=args.degree_bound,
        nilpotency_bound=args.nilpotency_bound,
        search_bound=args.search_bound,
        output=args.output,
    )
    try:
        code, body = args.func(args, cfg)
    except Malformed as exc:
        code, body = MALFORMED, {"error": "malformed input", "detail": str(exc)}
    except DecompositionRefused as exc:
        code, body = FAILED, {"error": "refused", "reason": exc.reason}
    except NotQNAError as exc:
        code, body = FAILED, {"error": "not a QNA", "reason": str(exc)}
    except QNAError as exc:
        code, body = FAILED, {"error": type(exc).__name__, "reason": str(exc)}
    if code != OK and "reason" in body:
        print(f"qna: {body['reason']}", file=sys.stderr)
    elif code == MALFORMED:
        print(f"qna: {body['detail']}", file=sys.stderr)
    report = {"format": FORMAT, "command": args.command, "exit_code": code}
    report.update(body)
    _emit(report, cfg)
    return code


if __name__ == "__main__":
    sys.exit(main())
