"""Command-line front end: ``rbh <subcommand> ...``.

Exit codes: 0 success (witness found, verification passed), 1 no witness or
verification failed, 2 usage or input error.  Machine output goes to stdout
or the ``-o`` file, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .bigraph import FamilyName, construct, decode_graph, encode_graph
from .errors import RbhError
from .rainbow import (
    bi_shift_family,
    decode_family,
    encode_family,
    find_rainbow_hamilton_cycle,
    find_rainbow_hamilton_path,
    longest_rainbow_path,
)
from .report import reports_to_csv
from .shifting import bi_shift, shift_xy
from .spectral import DEFAULT_EPS, DEFAULT_TOL, spectral_radius
from .verify import DEFAULT_SEED, default_jobs, sample_families, verify_target


class UsageError(Exception):
    pass


def _seed_default() -> int:
    env = os.environ.get("RBH_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"RBH_SEED must be an integer, got {env!r}") from None


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _pool_arg(text: str):
    if text in ("all", "hypothesis"):
        return text
    return FamilyName.parse(text)


# -- subcommands -------------------------------------------------------------


def cmd_construct(a) -> int:
    g = construct(FamilyName(a.family, a.k, a.n))
    _emit(encode_graph(g), a.output)
    return 0


def cmd_rho(a) -> int:
    g = decode_graph(_read(a.input))
    _emit(f"{spectral_radius(g, a.tol).value:.12f}\n", a.output)
    return 0


def cmd_shift(a) -> int:
    g = decode_graph(_read(a.input))
    _emit(encode_graph(shift_xy(g, tuple(a.pair))), a.output)
    return 0


def cmd_bishift(a) -> int:
    text = _read(a.input)
    if text.lstrip().startswith("p bfam"):
        _emit(encode_family(bi_shift_family(decode_family(text))), a.output)
    else:
        _emit(encode_graph(bi_shift(decode_graph(text))), a.output)
    return 0


def _search(a, finder) -> int:
    w = finder(decode_family(_read(a.input)))
    if w is None:
        _emit("none\n", a.output)
        return 1
    _emit(w.to_line() + "\n", a.output)
    return 0


def cmd_path(a) -> int:
    return _search(a, find_rainbow_hamilton_path)


def cmd_cycle(a) -> int:
    return _search(a, find_rainbow_hamilton_cycle)


def cmd_longest(a) -> int:
    return _search(a, longest_rainbow_path)


def cmd_verify(a) -> int:
    seed = _seed_default() if a.seed is None else a.seed
    kw = dict(seed=seed, orientation=a.orientation, jobs=a.jobs or default_jobs(), eps=a.eps, tol=a.tol)
    if a.count is not None:
        kw["count"] = a.count
    if a.target.startswith("thm"):
        kw["pool"] = a.pool
    reports = []
    orientations = ("X", "Y") if a.orientation == "both" else (a.orientation,)
    for o in orientations:
        kw["orientation"] = o
        reports.append(verify_target(a.target, a.n, a.mode, **kw))
    for r in reports:
        print(r.summary_line(), file=sys.stderr)
    if a.json:
        text = reports[0].to_json() if len(reports) == 1 else "[\n" + ",\n".join(
            r.to_json().rstrip("\n") for r in reports) + "\n]\n"
        Path(a.json).write_text(text)
    if a.csv:
        Path(a.csv).write_text(reports_to_csv(reports))
    if not a.json and not a.csv:
        _emit("".join(r.to_json() for r in reports), a.output)
    return 0 if all(r.passed for r in reports) else 1


def cmd_sample(a) -> int:
    seed = _seed_default() if a.seed is None else a.seed
    pool = _pool_arg(a.pool)
    if pool == "hypothesis":
        raise UsageError("sample accepts --pool all or a family name such as B,1,3")
    fams = sample_families(a.nx, a.ny, a.k, seed, a.count, pool)
    _emit("".join(encode_family(f) for f in fams), a.output)
    return 0


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--eps", type=float, default=DEFAULT_EPS, help="threshold tie window")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="power-iteration residual tolerance")
    common.add_argument("-o", "--output", help="write machine output here instead of stdout")

    p = argparse.ArgumentParser(prog="rbh", description="Bipartite shifting, spectral radius and rainbow Hamiltonicity tools.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="build Q/R/S/T/B^k_n as BGF")
    c.add_argument("--family", required=True, choices=list("QRSTB"))
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("rho", parents=[common], help="spectral radius of a BGF graph")
    c.add_argument("input", help="BGF file or - for stdin")
    c.set_defaults(func=cmd_rho)

    c = sub.add_parser("shift", parents=[common], help="apply one (x,y)-shift")
    c.add_argument("input")
    c.add_argument("--pair", type=int, nargs=2, required=True, metavar=("X", "Y"))
    c.set_defaults(func=cmd_shift)

    c = sub.add_parser("bishift", parents=[common], help="bi-shift a graph (BGF) or a family (BFAM)")
    c.add_argument("input")
    c.set_defaults(func=cmd_bishift)

    for name, func, what in (("path", cmd_path, "rainbow Hamilton path"),
                             ("cycle", cmd_cycle, "rainbow Hamilton cycle"),
                             ("longest", cmd_longest, "longest rainbow path")):
        c = sub.add_parser(name, parents=[common], help=f"search a BFAM family for a {what}")
        c.add_argument("input")
        c.set_defaults(func=func)

    c = sub.add_parser("verify", parents=[common], help="run a verification harness")
    c.add_argument("--target", required=True, help="thm1.4, lem3.2, cor5.1, obs1, ...")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--mode", default="exhaustive", choices=["exhaustive", "sample", "extremal-only"])
    c.add_argument("--seed", type=int, default=None)
    c.add_argument("--count", type=int, default=None)
    c.add_argument("--pool", default="all", choices=["all", "hypothesis"], help="sampling pool for theorems")
    c.add_argument("--orientation", default="X", choices=["X", "Y", "both"],
                   help="part holding the isolated vertex for the T0 settings")
    c.add_argument("--jobs", type=int, default=None)
    c.add_argument("--json", help="write the JSON report here")
    c.add_argument("--csv", help="write a CSV summary here")
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("sample", parents=[common], help="emit seeded random families as BFAM")
    c.add_argument("--nx", type=int, required=True)
    c.add_argument("--ny", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--count", type=int, required=True)
    c.add_argument("--seed", type=int, default=None)
    c.add_argument("--pool", default="all", help="all, or a family name like B,1,3 to draw labeled copies")
    c.set_defaults(func=cmd_sample)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except (RbhError, UsageError, OSError, ValueError) as exc:
        print(f"rbh: error: {exc}", file=sys.stderr)
        return 2


def run(argv: list[str]) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
