"""Command-line front end: ``python -m prodim <command> ...``.

Exit codes: 0 success, 2 parse or usage error, 3 invalid encoding,
4 search budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass

from .degenerate import DegenerateParams, degenerate_bound, encode_degenerate
from .encoding import DomainMismatch, dumps, encoding_from_dict, verify_encoding
from .exact import BudgetExceeded, SearchBudget, pdim_exact
from .forest import DEFAULT_EPSILON, encode_forest, forest_bound
from .generators import FAMILIES
from .io import FORMATS, ParseError, detect_format, parse_graph, parse_td
from .latin import BadOrder, choose_ols_order, format_pair, mols, mols_problems, parse_pair
from .treedecomp import decompose_exact, decompose_heuristic
from .treewidth import EXACT_DECOMPOSITION_LIMIT, encode_treewidth

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_BUDGET = 0, 2, 3, 4
METHODS = ("auto", "forest", "treewidth", "degenerate", "exact")

# flag -> methods that accept it
_METHOD_FLAGS = {
    "epsilon": ("forest",),
    "seed": ("degenerate",),
    "p_multiplier": ("degenerate",),
    "max_retries": ("degenerate",),
    "td": ("treewidth",),
    "timeout_ms": ("treewidth", "exact"),
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    input: str = "-"
    format: str | None = None
    method: str = "auto"
    output: str | None = None
    seed: int | None = None
    epsilon: float | None = None
    p_multiplier: float | None = None
    max_retries: int | None = None
    timeout_ms: float | None = None
    td: str | None = None
    timing: bool = False

    def check_flags(self, method: str):
        for flag, allowed in _METHOD_FLAGS.items():
            if getattr(self, flag) is not None and method not in allowed:
                name = "--" + flag.replace("_", "-")
                raise UsageError(f"{name} only applies to method {' or '.join(allowed)}, not {method}")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _write(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _load_graph(path: str, fmt: str | None):
    text = _read(path)
    return parse_graph(text, fmt or detect_format(text))


def choose_method(g) -> str:
    """Forest if acyclic, treewidth if a width <= 3 decomposition turns up,
    degenerate otherwise."""
    if g.is_forest():
        return "forest"
    td = decompose_exact(g) if g.n <= EXACT_DECOMPOSITION_LIMIT else decompose_heuristic(g)
    return "treewidth" if td.width <= 3 else "degenerate"


def encode_graph(g, method: str, cfg: RunConfig):
    """(encoding, metadata) for ``g`` under ``method``."""
    budget = SearchBudget(deadline_ms=cfg.timeout_ms) if cfg.timeout_ms else None
    meta = {"method": method, "retries": 0}
    if method == "forest":
        enc = encode_forest(g, cfg.epsilon if cfg.epsilon is not None else DEFAULT_EPSILON)
        bound = forest_bound(g.n)
        meta.update(bound=bound, bound_certified=enc.length <= bound)
    elif method == "treewidth":
        td = parse_td(_read(cfg.td)) if cfg.td else None
        r = encode_treewidth(g, td, budget)
        enc = r.encoding
        meta.update(bound=r.bound, bound_certified=r.bound_certified, width=r.width, decomposition=r.source)
    elif method == "degenerate":
        params = DegenerateParams(
            seed=cfg.seed if cfg.seed is not None else 0,
            multiplier=cfg.p_multiplier if cfg.p_multiplier is not None else 1.0,
            max_retries=cfg.max_retries if cfg.max_retries is not None else 64,
        )
        r = encode_degenerate(g, params)
        enc = r.encoding
        bound = degenerate_bound(g.n, r.k) if params.multiplier == 1 else enc.length
        meta.update(bound=bound, bound_certified=enc.length <= bound, retries=r.retries, k=r.k, seed=r.seed)
    elif method == "exact":
        _, enc = pdim_exact(g, budget)
        meta.update(bound=enc.length, bound_certified=True)
    else:
        raise UsageError(f"unknown method {method!r}")
    meta["dimension"] = enc.length
    return enc, meta


def cmd_encode(cfg: RunConfig) -> int:
    g = _load_graph(cfg.input, cfg.format)
    method = choose_method(g) if cfg.method == "auto" else cfg.method
    cfg.check_flags(method)
    t0 = time.perf_counter()
    try:
        enc, meta = encode_graph(g, method, cfg)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    if cfg.timing:
        meta["elapsed_ms"] = round((time.perf_counter() - t0) * 1000, 3)
    _write(cfg.output, dumps(enc, meta))
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load_graph(args.graph, args.format)
    try:
        enc = encoding_from_dict(json.loads(_read(args.encoding)))
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"bad encoding file: {exc}") from None
    try:
        report = verify_encoding(g, enc, cap=args.max_violations)
    except DomainMismatch as exc:
        print(f"invalid: {exc}")
        return EXIT_INVALID
    if report.valid:
        print(f"valid {enc.length}-encoding of a graph on {g.n} vertices")
        return EXIT_OK
    for v in report.violations:
        print(f"{v.reason.value} {v.u} {v.v}")
    if report.truncated:
        print("... more violations omitted")
    return EXIT_INVALID


def cmd_pdim(args) -> int:
    g = _load_graph(args.input, args.format)
    budget = SearchBudget(max_dimension=args.max_dimension, deadline_ms=args.timeout_ms)
    try:
        l, witness = pdim_exact(g, budget)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc} (lower bound {exc.lower_bound})", file=sys.stderr)
        return EXIT_BUDGET
    print(l)
    if args.witness:
        _write(args.witness, dumps(witness))
    return EXIT_OK


def cmd_mols(args) -> int:
    if args.verify:
        problems = mols_problems(parse_pair(_read(args.verify)))
        for p in problems:
            print(p)
        if problems:
            return EXIT_INVALID
        print("ok")
        return EXIT_OK
    if args.order is None:
        raise UsageError("give an order or --verify FILE")
    m = choose_ols_order(args.order) if args.bump else args.order
    try:
        pair = mols(m)
    except BadOrder as exc:
        raise UsageError(f"{exc}; --bump would use order {choose_ols_order(max(args.order, 1))}") from None
    _write(args.output, format_pair(pair))
    return EXIT_OK


BENCH_COLUMNS = ("family", "n", "param", "dimension", "bound", "valid", "seed", "ms")
_BENCH_METHOD = {"forest": "forest", "partial-ktree": "treewidth", "k-degenerate": "degenerate"}


def bench_rows(families, sizes, params, seeds):
    rows = []
    for fam in families:
        for n in sizes:
            for param in params if fam != "forest" else [0]:
                for seed in seeds:
                    g = FAMILIES[fam](n, param, seed)
                    t0 = time.perf_counter()
                    if fam == "k-degenerate":
                        r = encode_degenerate(g, DegenerateParams(k=param, seed=seed))
                        enc, bound = r.encoding, degenerate_bound(n, param)
                    else:
                        enc, meta = encode_graph(g, _BENCH_METHOD[fam], RunConfig("bench"))
                        bound = meta["bound"]
                    ms = (time.perf_counter() - t0) * 1000
                    rows.append({
                        "family": fam, "n": n, "param": param, "dimension": enc.length,
                        "bound": round(bound, 3), "valid": verify_encoding(g, enc, cap=0).valid,
                        "seed": seed, "ms": round(ms, 1),
                    })
    rows.sort(key=lambda r: (r["family"], r["n"], r["param"], r["seed"]))
    return rows


def cmd_bench(args) -> int:
    unknown = set(args.families) - set(FAMILIES)
    if unknown:
        raise UsageError(f"unknown families: {', '.join(sorted(unknown))}")
    rows = bench_rows(args.families, args.sizes, args.params, range(args.seeds))
    out = sys.stdout if args.output in (None, "-") else open(args.output, "w", newline="")
    try:
        w = csv.DictWriter(out, fieldnames=BENCH_COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK if all(r["valid"] for r in rows) else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="prodim", description="Product dimension encoders")
    sub = ap.add_subparsers(dest="command", required=True)

    def graph_in(p, name="input"):
        p.add_argument(name, nargs="?" if name == "input" else None, default="-",
                       help="graph file, '-' for stdin")
        p.add_argument("--format", choices=FORMATS, help="default: detect from header")

    p = sub.add_parser("encode", help="encode a graph")
    graph_in(p)
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("-o", "--output")
    p.add_argument("--seed", type=int)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--p-multiplier", type=float)
    p.add_argument("--max-retries", type=int)
    p.add_argument("--timeout-ms", type=float)
    p.add_argument("--td", help="PACE .td decomposition for --method treewidth")
    p.add_argument("--timing", action="store_true", help="add elapsed_ms to the metadata")

    p = sub.add_parser("verify", help="check an encoding against a graph")
    graph_in(p, "graph")
    p.add_argument("encoding")
    p.add_argument("--max-violations", type=int, default=20)

    p = sub.add_parser("pdim", help="exact product dimension")
    graph_in(p)
    p.add_argument("--timeout-ms", type=float, default=60_000.0)
    p.add_argument("--max-dimension", type=int)
    p.add_argument("--witness", help="write the optimal encoding here")

    p = sub.add_parser("mols", help="emit or check a pair of orthogonal Latin squares")
    p.add_argument("order", type=int, nargs="?")
    p.add_argument("--bump", action="store_true", help="use the next constructible order")
    p.add_argument("--verify", metavar="FILE")
    p.add_argument("-o", "--output")

    p = sub.add_parser("bench", help="sweep generated families, write CSV")
    p.add_argument("--families", nargs="+", default=list(FAMILIES))
    p.add_argument("--sizes", nargs="+", type=int, default=[64, 256])
    p.add_argument("--params", nargs="+", type=int, default=[1, 2, 3])
    p.add_argument("--seeds", type=int, default=3)
    p.add_argument("-o", "--output")
    return ap


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "encode":
            cfg = RunConfig(**{k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__})
            return cmd_encode(cfg)
        return {"verify": cmd_verify, "pdim": cmd_pdim, "mols": cmd_mols, "bench": cmd_bench}[
            args.command
        ](args)
    except (ParseError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


def main():
    sys.exit(run())
