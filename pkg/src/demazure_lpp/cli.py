"""Command-line entry point.

Every subcommand prints a JSON document carrying ``"schema": "demazure-lpp/1"``
unless ``--format text`` is given.  Exit status is 0 on success, 1 when a
verification or statistical comparison fails, and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import crystal, kernel, lpp, polynomial, rsk, weyl
from .crystal import Tableau

SCHEMA = "demazure-lpp/1"


class UsageError(Exception):
    pass


# -- parsing helpers -----------------------------------------------------------


def int_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.replace(" ", ",").split(",") if t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(t) for t in text.replace(" ", ",").split(",") if t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def pivot_arg(text: str) -> tuple[int, int]:
    values = int_list(text)
    if len(values) != 2:
        raise argparse.ArgumentTypeError("pivot is ROW,COL")
    return values


def parse_tableau(text: str) -> Tableau:
    """Rows bottom first, separated by ``/``; entries by commas or spaces."""
    rows = [int_list(r) for r in text.split("/") if r.strip()]
    return Tableau(tuple(rows))


def tableau_rows(T: Tableau) -> list[list[int]]:
    return [list(r) for r in T.rows]


def read_matrix(path: str) -> rsk.Matrix:
    """JSON array of arrays, or a whitespace-separated grid (one row per line)."""
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    try:
        data = json.loads(text)
        if isinstance(data, dict):
            data = data["matrix"]
    except json.JSONDecodeError:
        data = [[int(v) for v in line.split()] for line in text.splitlines() if line.strip()]
    return rsk.as_matrix(data)


def read_pair(path: str) -> tuple[rsk.BiTableauPair, int | None, int | None]:
    data = json.loads(Path(path).read_text())
    pair = rsk.BiTableauPair(Tableau(tuple(map(tuple, data["P"]))), Tableau(tuple(map(tuple, data["Q"]))))
    return pair, data.get("m"), data.get("n")


def emit(args, payload: dict, text: str) -> None:
    if args.format == "text":
        out = text.rstrip("\n") + "\n"
    else:
        out = json.dumps({"schema": SCHEMA, **payload}, indent=2, sort_keys=True) + "\n"
    target = getattr(args, "output", None)
    if target:
        Path(target).write_text(out)
    else:
        sys.stdout.write(out)


def matrix_text(A: rsk.Matrix) -> str:
    return "\n".join(" ".join(str(v) for v in row) for row in A)


# -- subcommands -------------------------------------------------------------------


def cmd_rsk(args) -> int:
    A = read_matrix(args.matrix)
    pair = rsk.rsk(A)
    perc = rsk.percolation_time(A)
    payload = {"P": tableau_rows(pair.P), "Q": tableau_rows(pair.Q), "percolation_time": perc,
               "m": len(A), "n": len(A[0]) if A else 0}
    emit(args, payload, f"P: {pair.P}\nQ: {pair.Q}\np(A) = {perc}")
    return 0


def cmd_rsk_inverse(args) -> int:
    pair, m, n = read_pair(args.pair)
    m = args.m or m or max(pair.P.max_letter(), 1)
    n = args.n or n or max(pair.Q.max_letter(), 1)
    A = rsk.rsk_inverse(pair, m, n)
    emit(args, {"matrix": [list(r) for r in A]}, matrix_text(A))
    return 0


def cmd_perc(args) -> int:
    A = read_matrix(args.matrix)
    perc = rsk.percolation_time(A)
    emit(args, {"percolation_time": perc}, str(perc))
    return 0


def cmd_keys(args) -> int:
    T = parse_tableau(args.tableau)
    n = args.n or max(T.max_letter(), len(T.rows), 1)
    plus = crystal.key_plus(T, n, args.method)
    minus = crystal.key_minus(T, n, args.method)
    payload = {
        "tableau": tableau_rows(T),
        "n": n,
        "key_plus": tableau_rows(plus),
        "key_plus_weight": list(plus.weight(n)),
        "key_minus": tableau_rows(minus),
        "key_minus_weight": list(minus.weight(n)),
        "is_key": crystal.is_key(T),
    }
    emit(args, payload, f"K+ = {plus}  weight {plus.weight(n)}\nK- = {minus}  weight {minus.weight(n)}")
    return 0


def cmd_char(args, atom: bool = False) -> int:
    mu = weyl.as_weight(args.mu)
    p = polynomial.demazure_atom(mu) if atom else polynomial.demazure_char(mu)
    emit(args, {"mu": list(mu), "kind": "atom" if atom else "character", "terms": polynomial.to_json(p)},
         p.to_string())
    return 0


def cmd_crystal_export(args) -> int:
    lam = crystal.shape_of(args.lam, args.n)
    graph = crystal.generate_crystal(lam, args.n)
    if args.format == "dot":
        dot = crystal.to_dot(graph)
        if args.output:
            Path(args.output).write_text(dot)
        else:
            sys.stdout.write(dot)
        return 0
    adj = crystal.to_adjacency(graph)
    emit(args, adj, f"{len(adj['vertices'])} vertices, {len(adj['edges'])} edges")
    return 0


def cmd_mu_tilde(args) -> int:
    mu = weyl.as_weight(args.mu)
    by_def = kernel.mu_tilde_def(mu, args.n, args.q)
    payload = {"mu": list(mu), "n": args.n, "q": args.q, "mu_tilde": list(by_def)}
    if args.method == "fast":
        fast = kernel.mu_tilde_fast(mu, args.n, len(mu), args.q)
        payload["mu_tilde"] = list(fast)
    elif args.method == "both":
        fast = kernel.mu_tilde_fast(mu, args.n, len(mu), args.q)
        payload["mu_tilde_fast"] = list(fast)
        payload["agree"] = fast == by_def
    emit(args, payload, ",".join(map(str, payload["mu_tilde"])))
    return 0 if payload.get("agree", True) else 1


def cmd_project(args) -> int:
    if args.perm is not None:
        sigma = weyl.as_permutation(args.perm)
    elif args.word is not None:
        if args.n is None:
            raise UsageError("--word needs --n")
        sigma = weyl.word_to_perm(args.word, args.n)
    else:
        raise UsageError("give --perm or --word")
    generators = args.generators if args.generators is not None else tuple(range(1, (args.p or 1)))
    result = weyl.parabolic_project(sigma, generators)
    payload = {
        "sigma": list(sigma),
        "generators": list(generators),
        "projection": list(result),
        "reduced_word": weyl.reduced_word(result),
    }
    emit(args, payload, f"{list(result)}  word {weyl.reduced_word(result)}")
    return 0


def cmd_verify_kernel(args) -> int:
    if args.shape == "staircase":
        report = kernel.verify_staircase(args.n, args.N, args.lascoux, args.jobs)
    elif args.shape == "truncated":
        _need(args, "p", "q")
        report = kernel.verify_truncated(args.n, args.p, args.q, args.N, args.lascoux, args.jobs)
    else:
        _need(args, "lam")
        report = kernel.verify_augmented(args.lam, args.n, args.pivot, args.N, args.lascoux, args.jobs)
    emit(args, report.to_json(), f"{report.status}: {report.counts}")
    return 0 if report.ok else 1


def _need(args, *names: str) -> None:
    missing = [name for name in names if getattr(args, name) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + ("lambda" if m == "lam" else m) for m in missing))


def _lpp_shape(args) -> kernel.ShapeDiagram:
    if args.shape == "truncated":
        _need(args, "p", "q")
    if args.shape == "augmented":
        _need(args, "lam")
    return lpp.shape_from_args(args.shape, n=args.n, p=args.p, q=args.q, lam=args.lam, m=args.m, pivot=args.pivot)


def _lpp_params(args, shape) -> lpp.GeomParams:
    m, k = lpp.matrix_dims(shape)
    u = args.u if args.u is not None else (0.3,) * m
    v = args.v if args.v is not None else (0.3,) * k
    return lpp.GeomParams(u, v)


def cmd_lpp(args) -> int:
    shape = _lpp_shape(args)
    params = _lpp_params(args, shape)
    header = {"shape": args.shape, "n": args.n, "u": list(params.u), "v": list(params.v)}
    if args.mode == "exact":
        table = lpp.exact_law(shape, params, args.k_max, args.N)
        payload, status = {**header, **table.to_json()}, 0
    elif args.mode == "simulate":
        table = lpp.monte_carlo(shape, params, args.trials, args.seed, args.jobs)
        payload, status = {**header, **table.to_json()}, 0
    else:
        exact = lpp.exact_law(shape, params, args.k_max, args.N)
        empirical = lpp.monte_carlo(shape, params, args.trials, args.seed, args.jobs)
        report = lpp.compare(exact, empirical, args.alpha)
        payload = {**header, "exact": exact.to_json(), "empirical": empirical.to_json(), "comparison": report}
        status = 0 if report["passed"] else 1
    payload.pop("schema", None)
    if args.json:
        args.output = args.json
    lines = [f"{b['k']}\t{b['p']:.10g}" for b in (payload.get("bins") or payload["exact"]["bins"])]
    emit(args, payload, "\n".join(lines))
    return status


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="demazure-lpp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", choices=["json", "text"], default="json")
        p.add_argument("--output", help="write to this file instead of stdout")
        return p

    p = add("rsk", "insertion and recording tableaux of a matrix")
    p.add_argument("matrix", help="matrix file (JSON or whitespace grid), '-' for stdin")
    p.set_defaults(func=cmd_rsk)

    p = add("rsk-inverse", "matrix of a tableau pair")
    p.add_argument("pair", help='JSON file {"P": rows, "Q": rows, "m": .., "n": ..}')
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_rsk_inverse)

    p = add("perc", "percolation time of a matrix")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_perc)

    p = add("keys", "right and left keys of a tableau")
    p.add_argument("--tableau", required=True, help="rows bottom first, e.g. '1,3/2'")
    p.add_argument("--n", type=int, help="alphabet size (default: largest letter)")
    p.add_argument("--method", choices=["auto", "atoms", "descent", "dilatation"], default="auto")
    p.set_defaults(func=cmd_keys)

    for name, atom in (("char", False), ("atom", True)):
        p = add(name, f"Demazure {'atom' if atom else 'character'} of a weight")
        p.add_argument("--mu", type=int_list, required=True)
        p.set_defaults(func=lambda a, atom=atom: cmd_char(a, atom))

    p = sub.add_parser("crystal-export", help="crystal graph B(lambda) as DOT or JSON")
    p.add_argument("--lambda", dest="lam", type=int_list, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=["dot", "json", "text"], default="dot")
    p.add_argument("--output")
    p.set_defaults(func=cmd_crystal_export)

    p = add("mu-tilde", "weight of the y-side character for the truncated kernel")
    p.add_argument("--mu", type=int_list, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--method", choices=["def", "fast", "both"], default="def")
    p.set_defaults(func=cmd_mu_tilde)

    p = add("project", "parabolic projection of a permutation")
    p.add_argument("--perm", type=int_list, help="one-line notation")
    p.add_argument("--word", type=int_list, help="a word in the simple transpositions")
    p.add_argument("--n", type=int)
    p.add_argument("--generators", "--I", type=int_list, help="kept generators, e.g. 1,2")
    p.add_argument("--p", type=int, help="shorthand for generators 1..p-1")
    p.set_defaults(func=cmd_project)

    p = add("verify-kernel", "check a restricted Cauchy identity up to a degree")
    p.add_argument("--shape", choices=["staircase", "truncated", "augmented"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--lambda", dest="lam", type=int_list)
    p.add_argument("--pivot", type=pivot_arg, help="ROW,COL of the French diagram")
    p.add_argument("--N", type=int, default=kernel.DEFAULT_DEGREE_CAP)
    p.add_argument("--lascoux", action="store_true", help="reverse the x alphabet on both sides")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify_kernel)

    p = add("lpp", "percolation-time laws")
    p.add_argument("mode", choices=["exact", "simulate", "compare"])
    p.add_argument("--shape", choices=["staircase", "truncated", "augmented", "rectangle"], required=True)
    p.add_argument("--n", type=int, required=True, help="grid size (columns for rectangles)")
    p.add_argument("--m", type=int, help="rows of a rectangle (default n)")
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--lambda", dest="lam", type=int_list)
    p.add_argument("--pivot", type=pivot_arg)
    p.add_argument("--u", type=float_list)
    p.add_argument("--v", type=float_list)
    p.add_argument("--N", type=int, default=14, help="degree cap of the exact sum")
    p.add_argument("--k-max", dest="k_max", type=int)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha", type=float, default=0.01)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", help="write the JSON document to this file")
    p.set_defaults(func=cmd_lpp)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ValueError, IndexError, KeyError, OSError) as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
