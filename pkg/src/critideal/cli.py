"""Command-line interface: ``critideal <command> [graph source] [options]``.

Exit status: 0 on success, 1 when a ``verify`` suite finds a failing check,
2 on input errors, 3 when the reduction budget runs out.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from typing import Any, Dict, List, Optional, Sequence

from . import critical, families
from .digraph import NAMED_GRAPHS, Digraph, GraphError, contract_seq, family, parse_graph
from .grobner import INTEGERS, RATIONALS, Budget, BudgetExceeded, Ideal, buchberger, ideal_equal
from .polyring import MonomialOrder, Polynomial, canonical_string
from .symlaplace import MinorTable, contracted_laplacian, det, generalized_laplacian

SCHEMA_VERSION = 1


class InputError(Exception):
    pass


def _mode(text: str) -> str:
    return {"z": INTEGERS, "q": RATIONALS}[text]


def _poly(p: Polynomial, order: Optional[MonomialOrder] = None) -> str:
    return canonical_string(p, order)


def _tpoly(p: Polynomial) -> str:
    return canonical_string(p, var="t")


def _int_list(text: str, name: str) -> List[int]:
    try:
        return [int(v) for v in text.replace(" ", "").split(",") if v != ""]
    except ValueError:
        raise InputError(f"{name} must be a comma-separated list of integers") from None


# --------------------------------------------------------------------------
# graph input

def load_graph(args) -> Digraph:
    cached = getattr(args, "_graph", None)
    if cached is not None:
        return cached
    args._graph = _load_graph(args)
    return args._graph


def _load_graph(args) -> Digraph:
    if args.graph and args.family:
        raise InputError("give either --graph or --family, not both")
    if args.graph:
        try:
            if args.graph == "-":
                text = sys.stdin.read()
            else:
                with open(args.graph, encoding="utf-8") as fh:
                    text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.graph}: {exc.strerror}") from None
        return parse_graph(text)
    if args.family:
        base = family(args.base, args.n, args.m) if args.base else None
        return family(args.family, args.n, args.m, base)
    raise InputError("a graph is required: use --graph FILE or --family NAME")


def _digest(G: Digraph) -> str:
    blob = json.dumps(G.to_json(), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


# --------------------------------------------------------------------------
# commands

def cmd_laplacian(args, budget) -> Dict[str, Any]:
    G = load_graph(args)
    L = generalized_laplacian(G)
    return {"n": G.n, "matrix": [[_poly(e) for e in row] for row in L.entries]}


def cmd_ideal(args, budget) -> Dict[str, Any]:
    G = load_graph(args)
    mode = _mode(args.mode)
    ideal = critical.critical_ideal(G, args.i, mode)
    out: Dict[str, Any] = {"i": args.i, "mode": args.mode, "generators": [_poly(p) for p in ideal.generators]}
    if args.groebner:
        if ideal.is_zero_ideal():
            out["basis"] = []
            out["trivial"] = False
        else:
            gb = buchberger(ideal, MonomialOrder.grlex(G.n), budget)
            out["basis"] = [_poly(p) for p in gb.basis]
            out["trivial"] = gb.is_trivial()
    return out


def cmd_gamma(args, budget) -> Dict[str, Any]:
    G = load_graph(args)
    return {"gamma": critical.gamma(G, _mode(args.mode), budget), "mode": args.mode}


def cmd_group(args, budget) -> Dict[str, Any]:
    G = load_graph(args)
    return critical.critical_group(G, reduced_at=args.reduced_at).to_json()


def cmd_eval(args, budget) -> Dict[str, Any]:
    G = load_graph(args)
    d = _int_list(args.degrees, "--degrees") if args.degrees else G.laplacian_degrees()
    if len(d) != G.n:
        raise InputError(f"--degrees has {len(d)} entries, the graph has {G.n} vertices")
    out: Dict[str, Any] = {"degrees": d, "invariant_factors": list(critical.evaluation_factors(G, d))}
    if args.i is not None:
        out["i"] = args.i
        out["value"] = critical.evaluate_ideal(G, args.i, d)
    return out


def cmd_tideal(args, budget) -> Dict[str, Any]:
    G = load_graph(args)
    mode = _mode(args.mode)
    levels = [args.i] if args.i is not None else list(range(1, G.n + 1))
    out = []
    for i in levels:
        ideal = critical.t_ideal(G, i, mode, budget)
        out.append({"i": i, "generators": [_tpoly(p) for p in ideal.generators]})
    return {"mode": args.mode, "ideals": out}


def cmd_charpoly(args, budget) -> Dict[str, Any]:
    G = load_graph(args)
    which = {"adj": "adjacency", "lap": "laplacian"}[args.which]
    return {"which": which, "polynomial": _tpoly(critical.char_poly(G, which))}


def cmd_contract(args, budget) -> Dict[str, Any]:
    G = load_graph(args)
    U = _int_list(args.u, "--u")
    V = _int_list(args.v, "--v")
    res = contract_seq(G, U, V)
    D = res.digraph
    labels = []
    for k in range(1, D.n + 1):
        if k in res.merged:
            u, v = res.merged[k]
            labels.append(f"{u}o{v}")
        else:
            labels.append(str(res.origins[k - 1][0]))
    M = contracted_laplacian(res, G.n)
    return {
        "n": D.n,
        "vertices": labels,
        "arcs": [[labels[u - 1], labels[v - 1], m] for u, v, m in D.arcs()],
        "forced_values": {labels[k - 1]: val for k, val in sorted(res.forced_values.items())},
        "matrix": [[_poly(e) for e in row] for row in M.entries],
        "det": _poly(det(M)),
    }


def _need_n(args, low: int) -> int:
    if args.n is None:
        raise InputError("--n is required for this suite")
    if args.n < low:
        raise InputError(f"--n must be at least {low}")
    return args.n


def suite_kn(args, budget) -> Dict[str, Any]:
    n = _need_n(args, 2)
    ms = [args.m] if args.m is not None else list(range(1, n))
    levels = []
    for m in ms:
        if not 1 <= m <= n - 1:
            raise InputError("--m must satisfy 1 <= m <= n-1")
        checks = families.kn_verify(n, m, budget)
        if m >= 2:
            checks["forward_containment"] = families.kn_primary_forward_check(n, m, budget)
        levels.append({"m": m, "basis": [_poly(p) for p in families.kn_basis(n, m)], "checks": checks})
    dk = families.kn_det(n) == det(generalized_laplacian(family("complete", n)))
    ok = dk and all(all(lv["checks"].values()) for lv in levels)
    return {"n": n, "determinant_closed_form": dk, "levels": levels, "ok": ok}


def suite_cycle(args, budget) -> Dict[str, Any]:
    n = _need_n(args, 4)
    G = family("cycle", n)
    table = MinorTable(generalized_laplacian(G))
    trivial = {i: critical.is_trivial_level(G, i, INTEGERS, budget, table) for i in range(1, n - 1)}
    cb = families.cycle_groebner(n)
    basis_checks = families.verify_cycle_basis(cb, budget)
    target = Ideal(n, families.cycle_ideal_generators(n))
    order = MonomialOrder.grlex(n)
    mingen = {}
    for k in range(1, n + 1):
        F = families.cycle_min_generators(n, k)
        same = F == families.cycle_min_generators_by_deletion(n, k)
        mingen[str(k)] = same and ideal_equal(target, Ideal(n, F), order, budget)
    ident = families.cycle_identity_check(n)
    ok = all(trivial.values()) and all(basis_checks.values()) and all(mingen.values()) and ident.ok
    return {
        "n": n,
        "trivial_below": all(trivial.values()),
        "basis": {
            "parity": cb.parity,
            "labels": [list(lab) for lab in cb.labels],
            "polynomials": [_poly(p, cb.order) for p in cb.polynomials],
            "checks": basis_checks,
        },
        "min_generators": mingen,
        "identities": ident.to_json(),
        "ok": ok,
    }


def suite_path(args, budget) -> Dict[str, Any]:
    n = _need_n(args, 2)
    w = families.path_gamma_witness(n)
    g = critical.gamma(family("path", n), INTEGERS, budget)
    ok = w.is_constant() and abs(w.constant_value()) == 1 and g == n - 1
    return {"n": n, "witness": _poly(w), "gamma": g, "ok": ok}


def suite_structure(args, budget) -> Dict[str, Any]:
    G = load_graph(args)
    return critical.verify_structure(G, budget=budget).to_json()


def suite_bounds(args, budget) -> Dict[str, Any]:
    G = load_graph(args)
    rep = critical.gamma_bounds_check(G, INTEGERS, budget)
    out = rep.to_json()
    out["ok"] = rep.ok
    return out


SUITES = {
    "kn": suite_kn,
    "cycle": suite_cycle,
    "path": suite_path,
    "structure": suite_structure,
    "bounds": suite_bounds,
}


def cmd_verify(args, budget) -> Dict[str, Any]:
    out = SUITES[args.suite](args, budget)
    out["suite"] = args.suite
    return out


COMMANDS = {
    "laplacian": cmd_laplacian,
    "ideal": cmd_ideal,
    "gamma": cmd_gamma,
    "group": cmd_group,
    "eval": cmd_eval,
    "tideal": cmd_tideal,
    "charpoly": cmd_charpoly,
    "contract": cmd_contract,
    "verify": cmd_verify,
}


# --------------------------------------------------------------------------
# parser and output

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("graph source")
    src.add_argument("--graph", metavar="FILE", help="graph file (line format or JSON); '-' reads stdin")
    src.add_argument(
        "--family",
        metavar="NAME",
        help="complete, cycle, path, trivial, complete-minus-star, complete-minus-matching, cone, "
        "or a named graph: " + ", ".join(sorted(NAMED_GRAPHS)),
    )
    src.add_argument("--n", type=int, help="family size parameter")
    src.add_argument("--m", type=int, help="second family parameter")
    src.add_argument("--base", metavar="NAME", help="base family for --family cone")
    out = common.add_argument_group("output")
    out.add_argument("--text", action="store_true", help="human-readable output instead of JSON")
    out.add_argument("--timing", action="store_true", help="include elapsed seconds in the report")

    parser = argparse.ArgumentParser(prog="critideal", description="Critical ideals of digraphs.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    sub.add_parser("laplacian", parents=[common], help="generalized Laplacian L(G,X)")

    p = sub.add_parser("ideal", parents=[common], help="generators of I_i(G,X)")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--groebner", action="store_true", help="also compute a reduced Gröbner basis")
    p.add_argument("--mode", choices=["z", "q"], default="z")

    p = sub.add_parser("gamma", parents=[common], help="number of trivial critical ideals")
    p.add_argument("--mode", choices=["z", "q"], default="z")

    p = sub.add_parser("group", parents=[common], help="critical group via Smith normal form")
    p.add_argument("--reduced-at", type=int, metavar="V", help="use the reduced Laplacian at vertex V")

    p = sub.add_parser("eval", parents=[common], help="evaluate the critical ideals at a degree vector")
    p.add_argument("--i", type=int)
    p.add_argument("--degrees", metavar="a,b,...", help="defaults to the Laplacian out-degrees")

    p = sub.add_parser("tideal", parents=[common], help="critical ideals with every x_j = t")
    p.add_argument("--i", type=int, help="a single level; all levels when omitted")
    p.add_argument("--mode", choices=["z", "q"], default="z")

    p = sub.add_parser("charpoly", parents=[common], help="characteristic polynomial from det L(G,X)")
    p.add_argument("--which", choices=["adj", "lap"], default="adj")

    p = sub.add_parser("contract", parents=[common], help="the contraction D(U;V)")
    p.add_argument("--u", required=True, metavar="u1,u2,...")
    p.add_argument("--v", required=True, metavar="v1,v2,...")

    p = sub.add_parser("verify", parents=[common], help="check closed-form results")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    return parser


def _inputs(args) -> Dict[str, Any]:
    skip = {"command", "text", "timing"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and not k.startswith("_") and v is not None and v is not False}


def render_text(report: Dict[str, Any]) -> str:
    lines = [f"{report['command']}"]

    def walk(value, indent):
        pad = "  " * indent
        if isinstance(value, dict):
            for k, v in value.items():
                if isinstance(v, (dict, list)) and v and not _flat(v):
                    lines.append(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {_fmt(v)}")
        elif isinstance(value, list):
            for v in value:
                if isinstance(v, (dict, list)) and not _flat(v):
                    lines.append(f"{pad}-")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}- {_fmt(v)}")

    walk(report["results"], 1)
    if "timing_seconds" in report:
        lines.append(f"  time: {report['timing_seconds']:.3f}s")
    return "\n".join(lines)


def _flat(v) -> bool:
    return isinstance(v, list) and all(isinstance(x, (int, bool, str)) for x in v)


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    return str(v)


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        budget = Budget()
    except ValueError:
        print("critideal: CRITIDEAL_BUDGET must be an integer", file=stderr)
        return 2
    try:
        results = COMMANDS[args.command](args, budget)
    except BudgetExceeded as exc:
        print(f"critideal: {exc}", file=stderr)
        return 3
    except (InputError, GraphError, ValueError, IndexError) as exc:
        print(f"critideal: {exc}", file=stderr)
        return 2
    report: Dict[str, Any] = {"version": SCHEMA_VERSION, "command": args.command, "inputs": _inputs(args)}
    try:
        report["inputs"]["graph_digest"] = _digest(load_graph(args))
    except (InputError, GraphError, ValueError):
        pass
    report["results"] = results
    if args.timing:
        report["timing_seconds"] = round(time.perf_counter() - start, 6)
    if args.text:
        print(render_text(report), file=stdout)
    else:
        print(json.dumps(report, indent=2), file=stdout)
    if args.command == "verify" and not results.get("ok", True):
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
