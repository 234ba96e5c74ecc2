"""Command-line front end: ``supermac mac | apply | verify | enumerate | fixtures``.

Exit codes: 0 success, 1 a verification failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Sequence

from .charges import SUPPORTED, charge
from .fixtures import pretty_scalar
from .fockrep import pieri_on_macdonald
from .hamiltonians import eigenvalue, expand_in_macdonald, h_negative, h_positive, macdonald
from .scalars import Scalar
from .superpartitions import SuperPartition, SuperPartitionError, enumerate_level, enumerate_up_to, parse
from .superpoly import SuperPolynomial, WindowError
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# parsing --------------------------------------------------------------------

def _partition(text: str, doubled: bool) -> SuperPartition:
    text = text.strip()
    if text in ("", "0", "()", "[]"):
        return SuperPartition(())
    try:
        return parse(text, doubled=doubled)
    except (SuperPartitionError, ValueError) as exc:
        raise UsageError(f"invalid partition {text!r}: {exc}") from exc


_OP = re.compile(r"^\s*([EFH])\s*([12])\s*,\s*([+-]?\d+)\s*$")


def parse_op(spec: str) -> tuple[str, int, int]:
    """'E2,0' -> ('E', 2, 0); 'H1,+1' -> ('H', 1, 1)."""
    m = _OP.match(spec)
    if not m:
        raise UsageError(f"cannot read operator {spec!r}; expected forms like E2,0  F1,-1  H2,+1")
    side, i, n = m.group(1), int(m.group(2)), int(m.group(3))
    if side == "H" and n not in (1, -1):
        raise UsageError("only the first Hamiltonians H_{i,+-1} are available")
    return side, i, n


def _check_window(lam: SuperPartition, max_level) -> None:
    if lam.level > Fraction(max_level):
        raise UsageError(f"level {lam.level} of {lam.text()} exceeds --max-level {max_level}")


# formatting -----------------------------------------------------------------

def _label(lam: SuperPartition) -> str:
    return lam.text() if lam.length else "0"


def format_combination(coeffs: dict[SuperPartition, Scalar], name: str = "M") -> str:
    if not coeffs:
        return "0"
    pieces = []
    for lam in sorted(coeffs, key=lambda k: k.doubled, reverse=True):
        c = pretty_scalar(coeffs[lam])
        term = f"{name}[{_label(lam)}]"
        if c == "1":
            pieces.append(term)
        elif c == "-1":
            pieces.append(f"-{term}")
        else:
            if any(ch in c.lstrip("-") for ch in "+-/"):
                c = f"({c})"
            pieces.append(f"{c} * {term}")
    return " + ".join(pieces).replace("+ -", "- ")


def _emit(args, text: str, payload) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


# commands -------------------------------------------------------------------

def cmd_mac(args) -> int:
    lam = _partition(args.partition, args.doubled)
    _check_window(lam, args.max_level)
    poly = macdonald(lam)
    _emit(args, str(poly), {
        "partition": list(lam.doubled),
        "level": str(lam.level),
        "polynomial": poly.to_json(),
    })
    return EXIT_OK


def _operator(side: str, i: int, n: int):
    if side == "H":
        return h_negative(i) if n < 0 else h_positive(i)
    return charge(i, side, n)


def cmd_apply(args) -> int:
    side, i, n = parse_op(args.op)
    lam = _partition(args.on, args.doubled)
    _check_window(lam, args.max_level)
    M = macdonald(lam)
    via = "operator"
    if side != "H" and (side, i, n) not in SUPPORTED:
        # no differential form for this mode: the Fock-space Pieri rule still applies
        coeffs = pieri_on_macdonald(side, i, n, lam)
        via = "fock"
        image = SuperPolynomial()
        for mu, v in coeffs.items():
            image = image + macdonald(mu).scale(v)
    else:
        image = _operator(side, i, n)(M)
        coeffs = expand_in_macdonald(image)
    payload = {
        "op": f"{side}{i},{n}",
        "on": list(lam.doubled),
        "via": via,
        "image": image.to_json(),
        "macdonald": [{"partition": list(mu.doubled), "coeff": v.to_json()} for mu, v in coeffs.items()],
    }
    text = format_combination(coeffs)
    if via == "fock" and not args.quiet:
        print(f"note: {side}{i},{n} evaluated with the Fock-space Pieri rule", file=sys.stderr)
    if args.eigen:
        if side != "H":
            raise UsageError("--eigen needs a Hamiltonian H1,+-1 or H2,+-1")
        ev = eigenvalue(i, n, lam)
        ok = image == M.scale(ev)
        payload["eigenvalue"] = ev.to_json()
        payload["proportional"] = ok
        text = f"eigenvalue: {pretty_scalar(ev)}\nproportional: {'yes' if ok else 'no'}"
        _emit(args, text, payload)
        return EXIT_OK if ok else EXIT_FAIL
    _emit(args, text, payload)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}")
    report = run_suite(args.suite, max_level=args.max_level, seed=args.seed, nmax=args.max)
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        print(report.format_text(quiet=args.quiet))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_enumerate(args) -> int:
    level = Fraction(args.level)
    if level.denominator not in (1, 2) or level < 0:
        raise UsageError("level must be a non-negative multiple of 1/2")
    parts = enumerate_up_to(level) if args.up_to else enumerate_level(level)
    if args.json:
        print(json.dumps([list(p.doubled) for p in parts]))
    else:
        for p in parts:
            print(",".join(map(str, p.doubled)) if args.doubled else _label(p))
    return EXIT_OK


def cmd_fixtures(args) -> int:
    if args.action == "export":
        data = {"polynomials": [
            {"partition": list(lam.doubled), "polynomial": macdonald(lam).to_json()}
            for lam in enumerate_up_to(args.max_level)
        ]}
        text = json.dumps(data, indent=1)
        if args.file and args.file != "-":
            with open(args.file, "w") as fh:
                fh.write(text + "\n")
        else:
            print(text)
        return EXIT_OK
    if not args.file:
        raise UsageError("fixtures import needs a file")
    with (sys.stdin if args.file == "-" else open(args.file)) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise UsageError(f"{args.file}: not JSON ({exc})") from exc
    bad = 0
    for item in data.get("polynomials", []):
        lam = SuperPartition(tuple(item["partition"]))
        poly = SuperPolynomial.from_json(item["polynomial"])
        ok = poly == macdonald(lam)
        bad += not ok
        if not args.quiet or not ok:
            print(f"[{'pass' if ok else 'FAIL'}] M[{_label(lam)}]")
    return EXIT_OK if not bad else EXIT_FAIL


# argument parser ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-level", type=Fraction, default=Fraction(4), help="level window (default 4)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled mode numbers")
    common.add_argument("--quiet", action="store_true")
    common.add_argument("--doubled", action="store_true", help="partitions given as doubled integers, e.g. 3,1")

    p = argparse.ArgumentParser(prog="supermac", description="super Macdonald polynomials and super charges")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("mac", parents=[common], help="print M_Lambda in the p / pi basis")
    s.add_argument("partition", help='e.g. "1,1/2", "3/2" or "0" for the empty partition')
    s.set_defaults(func=cmd_mac)

    s = sub.add_parser("apply", parents=[common], help="apply a charge or Hamiltonian to M_Lambda")
    s.add_argument("op", help="E2,0  F1,-1  H2,+1 ...")
    s.add_argument("--on", required=True, help="partition labelling the input M_Lambda")
    s.add_argument("--eigen", action="store_true", help="compare with the predicted eigenvalue")
    s.set_defaults(func=cmd_apply)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("suite", choices=[*SUITES, "all"])
    s.add_argument("--max", type=int, default=20, help="highest doubled level for the character check")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("enumerate", parents=[common], help="list super partitions of a level")
    s.add_argument("level", help="e.g. 5/2")
    s.add_argument("--up-to", action="store_true", help="all levels up to the given one")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("fixtures", parents=[common], help="export or check a polynomial table")
    s.add_argument("action", choices=["export", "import"])
    s.add_argument("file", nargs="?", help="JSON file ('-' for stdio)")
    s.set_defaults(func=cmd_fixtures)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, WindowError, ValueError, NotImplementedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
