"""Command-line interface.

Exit status: 0 for consistent / not_applicable, 3 for obstructed, 1 for
input errors, 2 when ``catalog`` finds a mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys

from .lattice import InvalidCharacteristic, LatticeSyntaxError, SpinCData, dirac_index, lattice_invariants, parse_lattice
from .obstructions import Verdict
from .repring import DomainError
from .scenarios import run_catalog, scenario_branched_cover, scenario_nonspin_family, scenario_spin_family
from .serialize import CHECKERS, HypothesisError, run_checker

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH, EXIT_OBSTRUCTED = 0, 1, 2, 3


def exit_code(verdict: Verdict | str) -> int:
    return EXIT_OBSTRUCTED if Verdict(verdict) is Verdict.OBSTRUCTED else EXIT_OK


def _ints(text: str) -> list[int]:
    text = text.strip()
    return [int(x) for x in text.split(",")] if text else []


def _lines(text: str) -> list[list[int]]:
    """'1;2;3' or '1,2;3' -> [[1], [2], [3]] / [[1, 2], [3]]."""
    return [_ints(chunk) for chunk in text.split(";") if chunk.strip()]


def _base(text: str) -> dict:
    kind, _, dim = text.partition(":")
    kind = {"pt": "point", "point": "point", "torus": "torus", "t": "torus", "rp": "rp"}.get(kind.lower())
    if kind is None:
        raise HypothesisError(f"bad base {text!r}; use point, torus:N or rp:N")
    return {"kind": kind, "dim": int(dim) if dim else 0}


def _lattice_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--lattice", required=required, help="e.g. 10H+6E8m+3D1p")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--c2", type=int, help="square of the characteristic element")
    g.add_argument("--spin", action="store_true", help="spin structure (c = 0)")


def _family_args(p: argparse.ArgumentParser) -> None:
    _lattice_args(p, required=False)
    p.add_argument("--base", default="point", help="point | torus:N | rp:N")
    p.add_argument("--lines", default="", help="torus line summands as generator lists, e.g. '1;2;3'")
    p.add_argument("--trivial", type=int, default=None, help="rank of the trivial summand")
    p.add_argument("--u", type=int, default=0, help="RP^n: rank of the trivial summand")
    p.add_argument("--v", type=int, default=0, help="RP^n: rank of the sign summand")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="monopole-obstruct", description="Smoothness obstructions for 4-manifolds, families and cyclic actions.")
    sub = parser.add_subparsers(dest="command", required=True)

    inv = sub.add_parser("invariants", help="rank, signature, b+/b-, parity (and d)")
    _lattice_args(inv)

    check = sub.add_parser("check", help="run one obstruction checker")
    csub = check.add_subparsers(dest="checker", required=True)
    for name in CHECKERS:
        cp = csub.add_parser(name)
        cp.add_argument("--json", dest="json_file", help="hypothesis file ('-' for stdin)")
        if name in ("donaldson", "furuta"):
            _lattice_args(cp, required=False)
        if name == "furuta":
            cp.add_argument("--b-plus", type=int)
        if name in ("family-euler", "spin-family"):
            _family_args(cp)
        if name in ("z2", "zp"):
            _lattice_args(cp, required=False)
            cp.add_argument("-p", type=int, default=2 if name == "z2" else None)
            cp.add_argument("--d", default=None, help="eigenspace index dimensions d_0,...,d_(p-1) (z2: d+,d-)")
            cp.add_argument("--h", default=None, help="H+_C eigenspace dimensions h_0,...")
            cp.add_argument("--inv-dim", type=int, default=0)
            cp.add_argument("--b-plus", type=int)
        if name == "even-involution":
            cp.add_argument("--sigma", type=int)
            cp.add_argument("--inv-dim", type=int)
            cp.add_argument("--type", choices=["even", "odd"], default="even")
            cp.add_argument("--b-plus", type=int)
        if name == "zp-spin":
            cp.add_argument("--d0", type=int)
            cp.add_argument("--inv-dim", type=int)
        if name == "ten-eighths-equivariant":
            cp.add_argument("-p", type=int)
            cp.add_argument("--hplus", default=None, help="multiplicities of H+_C, e.g. 2,0,0")
            cp.add_argument("--V", dest="V", default=None)
            cp.add_argument("--Vp", dest="Vp", default=None)

    sc = sub.add_parser("scenario", help="worked constructions")
    ssub = sc.add_subparsers(dest="scenario", required=True)
    bc = ssub.add_parser("branched-cover")
    bc.add_argument("-p", type=int, required=True)
    bc.add_argument("-g", type=int, required=True)
    bc.add_argument("-b", type=int, required=True)
    for name in ("spin-family", "nonspin-family"):
        sp = ssub.add_parser(name)
        sp.add_argument("-a", type=int, required=True)
        sp.add_argument("-b", type=int, required=True)
        if name == "nonspin-family":
            sp.add_argument("--trivialize", action="store_true", help="replace the H+ bundle by a trivial one")

    sub.add_parser("catalog", help="reproduce every worked example and print a verdict table")
    return parser


def _hypothesis_from_flags(args: argparse.Namespace) -> dict:
    data: dict = {}
    if getattr(args, "lattice", None):
        data["lattice"] = args.lattice
    if getattr(args, "c2", None) is not None:
        data["c2"] = args.c2
    if getattr(args, "spin", False):
        data["spin"] = True
    name = args.checker
    if name in ("donaldson", "furuta", "family-euler", "spin-family") and not args.lattice:
        raise HypothesisError("need --lattice (or --json)")
    if name == "furuta" and args.b_plus is not None:
        data["b_plus"] = args.b_plus
    if name in ("family-euler", "spin-family"):
        base = _base(args.base)
        data["base"] = base
        if base["kind"] == "rp":
            data["hplus"] = {"u": args.u, "v": args.v}
        else:
            lines = _lines(args.lines)
            trivial = args.trivial
            if trivial is None:
                L = parse_lattice(args.lattice)
                trivial = L.b_plus - len(lines)
            data["hplus"] = {"lines": lines, "trivial": trivial}
        if name == "spin-family":
            data["spin_family"] = True
    if name in ("z2", "zp"):
        if args.p is None or args.d is None:
            raise HypothesisError("need -p and --d")
        act = {"p": args.p, "d": _ints(args.d), "inv_dim": args.inv_dim}
        if args.h is not None:
            act["h"] = _ints(args.h)
        data["action"] = act
        if args.b_plus is not None:
            data["b_plus"] = args.b_plus
    if name == "even-involution":
        if args.sigma is None or args.inv_dim is None:
            raise HypothesisError("need --sigma and --inv-dim")
        data = {"sigma": args.sigma, "action": {"p": 2, "inv_dim": args.inv_dim, "type": args.type}}
        if args.b_plus is not None:
            data["b_plus"] = args.b_plus
    if name == "zp-spin":
        if args.d0 is None or args.inv_dim is None:
            raise HypothesisError("need --d0 and --inv-dim")
        data = {"action": {"d": [args.d0], "inv_dim": args.inv_dim}}
    if name == "ten-eighths-equivariant":
        if None in (args.p, args.hplus, args.V, args.Vp):
            raise HypothesisError("need -p, --hplus, --V and --Vp")
        data = {"action": {"p": args.p, "hplus_c": _ints(args.hplus), "V": _ints(args.V), "Vp": _ints(args.Vp)}}
    return data


def _emit(obj: dict) -> None:
    print(json.dumps(obj, indent=2))


def _cmd_invariants(args) -> int:
    L = parse_lattice(args.lattice)
    inv = lattice_invariants(L)
    out = {"lattice": str(L), **inv._asdict()}
    if args.spin or args.c2 is not None:
        s = SpinCData.spin() if args.spin else SpinCData(args.c2)
        out["c2"] = s.c_squared
        out["d"] = dirac_index(L, s)
    _emit(out)
    return EXIT_OK


def _cmd_check(args) -> int:
    if args.json_file:
        fh = sys.stdin if args.json_file == "-" else open(args.json_file)
        with fh:
            data = json.load(fh)
    else:
        data = _hypothesis_from_flags(args)
    report = run_checker(args.checker, data)
    _emit(report.to_dict())
    return exit_code(report.verdict)


def _cmd_scenario(args) -> int:
    if args.scenario == "branched-cover":
        s = scenario_branched_cover(args.p, args.g, args.b)
    elif args.scenario == "spin-family":
        s = scenario_spin_family(args.a, args.b)
    else:
        s = scenario_nonspin_family(args.a, args.b, args.trivialize)
    out = s.report()
    _emit(out)
    return exit_code(out["verdict"])


def _cmd_catalog(args) -> int:
    rows = run_catalog()
    width = max(len(r.name) for r in rows)
    print(f"{'scenario':<{width}}  {'expected':<14}  {'got':<14}  status")
    for r in rows:
        print(f"{r.name:<{width}}  {r.expected:<14}  {r.got:<14}  {'ok' if r.ok else 'MISMATCH'}")
    bad = sum(not r.ok for r in rows)
    print(f"{len(rows)} scenarios, {bad} mismatches")
    return EXIT_OK if bad == 0 else EXIT_MISMATCH


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"invariants": _cmd_invariants, "check": _cmd_check, "scenario": _cmd_scenario, "catalog": _cmd_catalog}
    try:
        return handlers[args.command](args)
    except LatticeSyntaxError as exc:
        print(json.dumps({"error": str(exc), "position": exc.position}), file=sys.stderr)
    except (InvalidCharacteristic, HypothesisError, DomainError, ValueError, KeyError, OSError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
