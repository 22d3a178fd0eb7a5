"""
plumbroot <check|spinc|root|zhat|zz|oracle|verify|conjcheck> <file> [options]

Every number written to stdout is an exact integer or "p/q" string. Logs go
to stderr.
"""
import argparse
import json
import logging
import re
import sys
from fractions import Fraction
from typing import List, Optional, TextIO, Tuple

from plumbroot.core import Plumbing, describe, read_plumbing
from plumbroot.exceptions import MalformedInput, NotNegativeDefinite, PlumbrootError
from plumbroot.orchestrator import build_family, build_pipeline, make_cases, run_checks
from plumbroot.oracle import zhat_oracle
from plumbroot.reports import summarize
from plumbroot.root import (
    AUTO, GradingMode, build_root, lattice_context, normalize_root, root_to_dot, root_to_json, root_to_text,
)
from plumbroot.series import conjugation_check, specialize_t1, two_var_series
from plumbroot.spinc import (
    canonical_spinc, check_characteristic, conjugate, enumerate_spinc, h1_invariants, k_to_a,
    minimal_representative, self_conjugate,
)
from plumbroot.utils import config_value, configure_logging, format_rational, parse_int_vector, parse_rational

logger = logging.getLogger(__name__)

VECTOR = re.compile(r"^-?\d+(,-?\d+)*$")

COMMANDS = ("check", "spinc", "root", "zhat", "zz", "oracle", "verify", "conjcheck")


class UsageError(Exception):
    pass


def _top(text: str):
    if text == AUTO:
        return AUTO
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--top takes an integer or 'auto', got {text!r}")


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except MalformedInput as e:
        raise argparse.ArgumentTypeError(str(e))


def _vector(text: str) -> Tuple[int, ...]:
    try:
        return tuple(parse_int_vector(text))
    except MalformedInput as e:
        raise argparse.ArgumentTypeError(str(e))


def _spinc(text: str):
    if text == AUTO:
        return AUTO
    try:
        index = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--spinc takes 'auto' or a class index, got {text!r}")
    if index < 0:
        raise argparse.ArgumentTypeError(f"class index must be non-negative, got {index}")
    return index


def attach_vectors(argv: List[str]) -> List[str]:
    """
    "--k -5,5,8,9,1" as "--k=-5,5,8,9,1", so argparse does not read the
    vector as an option.
    """
    attached: List[str] = []
    tokens = iter(argv)
    for token in tokens:
        if token == "--k":
            value = next(tokens, None)
            if value is not None and VECTOR.match(value):
                attached.append(f"--k={value}")
                continue
            attached.append(token)
            if value is not None:
                attached.append(value)
            continue
        attached.append(token)
    return attached


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plumbroot",
        description="Weighted graded roots and two-variable series of negative definite plumbings",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("file", help="plumbing JSON file ('random' for verify)")
    parser.add_argument("--k", type=_vector, help="characteristic vector as CSV, e.g. --k -5,5,8,9,1")
    parser.add_argument("--spinc", type=_spinc, default=AUTO,
                        help="'auto' picks the unique class of an integer homology sphere; "
                             "an integer picks that class in the order `spinc` lists them")
    parser.add_argument("--family", default="fhat", help="fhat, fhat+, fhat- or seeds:<file>")
    parser.add_argument("--order", type=_rational, help="series order N, relative to Delta_k")
    parser.add_argument("--top", type=_top, default=AUTO)
    parser.add_argument("--format", choices=["json", "dot", "text"], default=None)
    parser.add_argument("--normalize", choices=["chi", "hf"], default=None)
    parser.add_argument("--moves", type=int, default=None)
    parser.add_argument("--trials", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--verbose", action="store_true")
    return parser


def _dump(payload, out: TextIO) -> None:
    out.write(json.dumps(payload, separators=(",", ":")) + "\n")


def _resolve_k(p: Plumbing, args) -> Tuple[int, ...]:
    facts = describe(p)
    if not facts["negative_definite"]:
        raise NotNegativeDefinite("the intersection matrix is not negative definite", det=facts["det"])
    if args.k is not None:
        return check_characteristic(p, args.k)
    if args.spinc != AUTO:
        classes = enumerate_spinc(p)
        if args.spinc >= len(classes):
            raise UsageError(f"--spinc {args.spinc} is out of range, there are {len(classes)} classes")
        return minimal_representative(p, classes[args.spinc])
    if abs(facts["det"]) != 1:
        raise UsageError("--spinc auto needs |det M| = 1; pass --k or a class index for other plumbings")
    return minimal_representative(p, canonical_spinc(p, p.weights))


def _order(args, section: str = "series", key: str = "default_order") -> Fraction:
    if args.order is not None:
        return args.order
    return parse_rational(config_value(section, key, "10"))


# ---------------------------------------------------------------------------
# Commands

def cmd_check(p: Plumbing, args, out: TextIO) -> None:
    facts = describe(p)
    det = facts["det"]
    _dump({"negative_definite": facts["negative_definite"], "det": det, "spinc_count": abs(det)}, out)


def cmd_spinc(p: Plumbing, args, out: TextIO) -> None:
    classes = enumerate_spinc(p)
    summary = {
        "det": describe(p)["det"],
        "count": len(classes),
        "h1": h1_invariants(p),
        "self_conjugate": [list(k) for k in classes if self_conjugate(p, k)],
    }
    if args.format == "json":
        _dump(dict(classes=[list(k) for k in classes], **summary), out)
        return
    for k in classes:
        _dump(list(k), out)
    _dump(summary, out)


def cmd_root(p: Plumbing, args, out: TextIO) -> None:
    family = build_family(args.family)
    ctx = lattice_context(p, _resolve_k(p, args))
    root = build_root(ctx, family, top=args.top)
    fmt = args.format or "json"
    mode = args.normalize or ("hf" if fmt != "json" else "chi")
    root = normalize_root(root, GradingMode.HF_GRADING if mode == "hf" else GradingMode.CHI)

    if fmt == "json":
        _dump(root_to_json(root), out)
    elif fmt == "dot":
        out.write(root_to_dot(root) + "\n")
    else:
        out.write(root_to_text(root) + "\n")


def cmd_zz(p: Plumbing, args, out: TextIO) -> None:
    ctx = lattice_context(p, _resolve_k(p, args))
    series = two_var_series(ctx, build_family(args.family), _order(args))
    _dump(series.to_json(), out)


def cmd_zhat(p: Plumbing, args, out: TextIO) -> None:
    ctx = lattice_context(p, _resolve_k(p, args))
    series = specialize_t1(two_var_series(ctx, build_family(args.family), _order(args)))
    _dump(series.to_json(), out)


def cmd_oracle(p: Plumbing, args, out: TextIO) -> None:
    k = _resolve_k(p, args)
    _dump(zhat_oracle(p, k_to_a(p, k), _order(args)).to_json(), out)


def cmd_conjcheck(p: Plumbing, args, out: TextIO) -> None:
    k = _resolve_k(p, args)
    result = conjugation_check(p, k, build_family(args.family), _order(args))
    _dump({
        "ok": result.ok,
        "k": list(k),
        "conjugate": list(conjugate(k)),
        "q_bound": format_rational(result.series.q_bound),
        "mismatches": [[format_rational(q_exp), t_exp] for q_exp, t_exp in result.mismatches],
    }, out)


def cmd_verify(p: Optional[Plumbing], args, out: TextIO) -> None:
    trials = args.trials if args.trials is not None else config_value("verify", "trials", 100)
    moves = args.moves if args.moves is not None else config_value("verify", "moves", 5)
    seed = args.seed if args.seed is not None else config_value("verify", "seed", 1)
    order = _order(args, "verify", "order")
    chosen = args.k is not None or args.spinc != AUTO
    k = _resolve_k(p, args) if (p is not None and chosen) else None

    cases = make_cases(p, build_family(args.family), trials, moves, seed, order, k=k)
    report = run_checks(cases, build_pipeline())
    _dump(summarize(report, trials), out)


HANDLERS = {
    "check": cmd_check,
    "spinc": cmd_spinc,
    "root": cmd_root,
    "zhat": cmd_zhat,
    "zz": cmd_zz,
    "oracle": cmd_oracle,
    "verify": cmd_verify,
    "conjcheck": cmd_conjcheck,
}


def run(argv: Optional[List[str]] = None, out: Optional[TextIO] = None) -> int:
    """
    Exit codes: 0 success, 1 domain error (JSON error object on stdout),
    2 usage error.
    """
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(attach_vectors(list(sys.argv[1:] if argv is None else argv)))
    except SystemExit as e:
        return int(e.code or 0)

    configure_logging("DEBUG" if args.verbose else None)
    if args.command in ("root", "spinc") and args.format is None:
        args.format = "json" if args.command == "root" else "text"
    if args.command == "spinc" and args.format not in ("json", "text"):
        parser.print_usage(sys.stderr)
        return 2

    try:
        if args.command == "verify" and args.file == "random":
            plumbing = None
        else:
            plumbing = read_plumbing(args.file)
        HANDLERS[args.command](plumbing, args, out)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"plumbroot: error: {e}\n")
        return 2
    except PlumbrootError as e:
        logger.debug("command %s failed", args.command, exc_info=True)
        _dump(e.to_dict(), out)
        return 1
    return 0


def main() -> None:
    sys.exit(run())
