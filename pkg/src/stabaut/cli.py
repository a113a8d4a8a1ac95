"""Command-line driver: ``stabaut <subcommand> --code NAME | --file PATH``."""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import analysis
from .automorphism import (
    AutomorphismKind,
    SearchBudgetError,
    compute_group,
    consistency_violations,
    default_workers,
    is_clifford,
    is_strong,
    is_weak,
    weak_twist_witness,
)
from .catalog import CATALOG, UnknownCode, catalog_lookup, load_code_file
from .group import StabilizerError, StabilizerGroup, build_group
from .pauli import parse_cycles, parse_pauli, serialize_pauli

LONG_SEARCH_QUBITS = 11


class CLIError(Exception):
    pass


def _load(args) -> tuple[StabilizerGroup, str]:
    if args.code and args.file:
        raise CLIError("give either --code or --file, not both")
    if args.code:
        entry = catalog_lookup(args.code)
        return build_group(list(entry.generators), reduce=args.reduce), entry.name
    if args.file:
        try:
            gens, _ = load_code_file(args.file)
        except FileNotFoundError:
            raise CLIError(f"file not found: {args.file}") from None
        if not gens:
            raise CLIError(f"no generators in {args.file}")
        return build_group(gens, reduce=args.reduce), args.file
    raise CLIError("a code is required: --code NAME or --file PATH")


def _emit(args, data: dict, text: str):
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        print(text)


def cmd_catalog(args):
    if args.code:
        e = catalog_lookup(args.code)
        data = {
            "name": e.name,
            "description": e.description,
            "generators": list(e.generators),
            "expected": {k: v for k, v in vars(e.expected).items() if v is not None},
        }
        _emit(args, data, "\n".join([f"{e.name}: {e.description}", *e.generators]))
        return 0
    rows = [{"name": e.name, "description": e.description} for e in CATALOG.values()]
    _emit(args, {"codes": rows}, "\n".join(f"{r['name']:6} {r['description']}" for r in rows))
    return 0


def cmd_validate(args):
    S, name = _load(args)
    data = {
        "code": name,
        "n": S.n,
        "m": S.m,
        "k": S.k,
        "generators": [serialize_pauli(g) for g in S.generators],
    }
    _emit(args, data, f"valid stabilizer group: n={S.n} m={S.m} k={S.k}")
    return 0


def cmd_params(args):
    S, name = _load(args)
    p = analysis.distance(S)
    data = {"code": name, "n": p.n, "k": p.k, "d": p.d,
            "degenerate_convention": p.degenerate_convention}
    tag = " (degenerate convention)" if p.degenerate_convention else ""
    _emit(args, data, f"n={p.n} k={p.k} d={p.d}{tag}")
    return 0


def cmd_distance(args):
    S, name = _load(args)
    p = analysis.distance(S)
    data = {"code": name, "d": p.d, "witness": serialize_pauli(p.witness),
            "degenerate_convention": p.degenerate_convention}
    _emit(args, data, f"d={p.d} witness={serialize_pauli(p.witness)}")
    return 0


def cmd_basis(args):
    S, _ = _load(args)
    try:
        b = analysis.codespace_basis(S)
    except ValueError as exc:
        raise CLIError(str(exc)) from None
    data = {
        "n": b.n,
        "vectors": [
            [{"label": lab, "re": int(c.real), "im": int(c.imag)} for lab, c in b.terms(i)]
            for i in range(len(b.vectors))
        ],
    }
    _emit(args, data, b.format())
    return 0


def cmd_check_errors(args):
    S, _ = _load(args)
    if args.errors:
        errs = [parse_pauli(t) for t in args.errors.replace(",", " ").split()]
    else:
        errs = analysis.single_qubit_errors(S.n)
    rep = analysis.check_correctable(S, errs)
    data = {"correctable": rep.correctable}
    if rep.correctable:
        text = f"correctable ({len(errs)} errors)"
    else:
        i, j = rep.pair
        data.update(pair=[i, j], errors=[str(errs[i]), str(errs[j])],
                    product=str(rep.product))
        text = (f"NOT correctable: E{i}^* E{j} = {rep.product} lies in N(S)-S "
                f"(E{i}={errs[i]}, E{j}={errs[j]})")
    _emit(args, data, text)
    return 0


def _progress(stats):
    print(f"  scanned {stats.nodes} nodes, pruned {stats.pruned}, "
          f"leaves {stats.leaves}", file=sys.stderr, flush=True)


def cmd_aut(args):
    S, name = _load(args)
    kind = AutomorphismKind(args.kind)
    if kind is AutomorphismKind.CLIFFORD and S.n >= LONG_SEARCH_QUBITS and not args.allow_long:
        raise CLIError(f"clifford search at n={S.n} has unbounded runtime; pass --allow-long")
    workers = args.threads or default_workers()
    t0 = time.time()
    try:
        res = compute_group(S, kind, workers=workers, progress=_progress,
                            witnesses=args.elements)
    except SearchBudgetError as exc:
        raise CLIError(str(exc)) from None
    elapsed = time.time() - t0
    data = res.to_dict(include_elements=args.elements)
    data["code"] = name
    lines = [
        f"{kind.value} automorphism group of {name}",
        f"order: {res.order}",
        f"generators: {', '.join(str(g) for g in res.generators) or '(identity only)'}",
        f"transitivity degree: {res.transitivity_degree}",
        f"cyclic: {'yes' if res.is_cyclic else 'no'}",
    ]
    if args.elements:
        for g, w in zip(res.elements, res.witnesses):
            lines.append(f"  {g!s:32} {_format_witness(w)}")
    if kind is not AutomorphismKind.CLIFFORD:
        p = analysis.distance(S)
        issues = consistency_violations(p.d, p.k, [res])
        data["consistency"] = issues
        lines.append("consistency: " + ("ok" if not issues else "; ".join(issues)))
    print(f"search finished in {elapsed:.2f}s ({res.stats})", file=sys.stderr)
    _emit(args, data, "\n".join(lines))
    return 0


def _format_witness(w) -> str:
    if w is None:
        return ""
    if isinstance(w, tuple):
        return "signs " + " ".join("+" if s > 0 else "-" for s in w)
    return "twist " + str(w)


def cmd_check_perm(args):
    S, name = _load(args)
    if not args.perm:
        raise CLIError("--perm is required")
    sigma = parse_cycles(args.perm, S.n)
    kind = AutomorphismKind(args.kind)
    data = {"code": name, "perm": str(sigma), "kind": kind.value}
    if kind is AutomorphismKind.STRONG:
        ok = is_strong(S, sigma)
        extra = ""
    elif kind is AutomorphismKind.WEAK:
        chk = is_weak(S, sigma)
        ok = bool(chk)
        extra = ""
        if ok:
            gamma = weak_twist_witness(S, sigma).gamma
            data["signs"] = list(chk.signs)
            data["gamma"] = serialize_pauli(gamma)
            extra = f" (signs {_format_witness(chk.signs)[6:]}; gamma={serialize_pauli(gamma)})"
    else:
        tw = is_clifford(S, sigma)
        ok = tw is not None
        extra = f" (twist {tw})" if ok else ""
        if ok:
            data["twist"] = tw.names()
    data["member"] = ok
    verdict = "member" if ok else "NOT a member"
    _emit(args, data, f"{sigma} is {verdict} of the {kind.value} group{extra}")
    return 0


COMMANDS = {
    "catalog": cmd_catalog,
    "validate": cmd_validate,
    "params": cmd_params,
    "distance": cmd_distance,
    "basis": cmd_basis,
    "check-errors": cmd_check_errors,
    "aut": cmd_aut,
    "check-perm": cmd_check_perm,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--code", help="catalog name (see the catalog subcommand)")
    common.add_argument("--file", help="code file: one signed Pauli string per line")
    common.add_argument("--json", action="store_true", help="structured output")
    common.add_argument("--reduce", action="store_true",
                        help="drop dependent generators instead of rejecting them")
    common.add_argument("--kind", choices=[k.value for k in AutomorphismKind], default="strong")
    common.add_argument("--perm", help='cycle notation, e.g. "(1 3)(2 4 5)"')
    common.add_argument("--threads", type=int, default=0,
                        help="search workers (default: available CPUs)")
    common.add_argument("--allow-long", action="store_true",
                        help="permit clifford searches with unbounded runtime")
    common.add_argument("--elements", action="store_true",
                        help="list every group element with its witness")
    common.add_argument("--errors", help="comma-separated error operators "
                        "(default: all weight-1 errors)")

    parser = argparse.ArgumentParser(prog="stabaut", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def run_cli(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (CLIError, StabilizerError, UnknownCode, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
