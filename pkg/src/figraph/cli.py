"""Command-line front end.

Exit codes: 0 success, 1 domain error (JSON error on stderr), 2 budget
exhausted (partial results are still written).
"""

from __future__ import annotations

import argparse
import csv
import datetime
import hashlib
import io
import json
import random
import sys
from pathlib import Path

from . import __version__
from .analysis import InsufficientData, NoFit, check_trends, detect_recurrence, fit_quasi_polynomial
from .expand import expand
from .graph import GraphFormatError, read_graph, to_dimacs, to_json
from .ideals import edge_ideal
from .model import ClassificationGraph, ParseError, RandomGenParams, ValidationError, family, parse, \
    random_classification_graph
from .solver import Budget, BudgetExceeded, TooLarge, max_independent_set, scan_alpha, \
    sequence_from_csv, sequence_from_json
from .verify import SUITES, TREND_PARAMS, run_suite

DEFAULT_BUDGET_NODES = 10_000_000
DEFAULT_BUDGET_SECS = 60.0


class DomainError(Exception):
    pass


def _read_bytes(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None


def load_classification(path: str) -> ClassificationGraph:
    """Load a classification graph from a JSON file, or ``family:NAME[:k]``."""
    if path.startswith("family:"):
        name, *rest = path[len("family:"):].split(":")
        try:
            return family(name, *(int(x) for x in rest))
        except ValueError as exc:
            raise DomainError(str(exc)) from None
    try:
        return parse(_read_bytes(path))
    except (ParseError, ValidationError) as exc:
        raise DomainError(f"{path}: {exc}") from exc


def _input_digest(path: str) -> str:
    if path.startswith("family:"):
        return hashlib.sha256(path.encode()).hexdigest()[:16]
    return hashlib.sha256(_read_bytes(path)).hexdigest()[:16]


def _budget(args) -> Budget:
    return Budget(max_nodes=args.budget_nodes, max_seconds=args.budget_secs)


def _emit(args, text: str, inputs: list[str], seeds: dict | None = None) -> None:
    if not args.out:
        sys.stdout.write(text)
        return
    out = Path(args.out)
    out.write_text(text)
    params = {k: v for k, v in vars(args).items() if k not in ("func", "out", "command") and v is not None}
    manifest = {
        "tool": "figraph",
        "version": __version__,
        "command": args.command,
        "parameters": params,
        "seeds": seeds or {},
        "inputs": {p: _input_digest(p) for p in inputs},
        "output": out.name,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds"),
    }
    out.with_name(out.name + ".manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


# --- commands -------------------------------------------------------------

def cmd_validate(args) -> int:
    c = load_classification(args.file)
    counts = {k: c.count(k) for k in ("pair", "linear", "singleton")}
    text = json.dumps({"ok": True, "digest": c.digest(), "orbits": counts,
                       "loops": len(c.loops), "edges": len(c.edges)}, sort_keys=True) + "\n"
    _emit(args, text, [args.file])
    return 0


def cmd_expand(args) -> int:
    c = load_classification(args.file)
    g = expand(c, args.n)
    fmt = args.format or "dimacs"
    if fmt == "dimacs":
        text = to_dimacs(g, comment=f"figraph expand n={args.n} digest={c.digest()}")
    elif fmt == "json":
        text = to_json(g)
    elif fmt == "text":
        lines = [f"n={g.n} vertices={g.num_vertices} edges={g.num_edges}"]
        for i, v in enumerate(g.vertices):
            lines.append(f"{i}\t{v}\t" + " ".join(map(str, g.neighbors(i))))
        text = "\n".join(lines) + "\n"
    else:
        raise DomainError(f"format {fmt!r} not supported by expand")
    _emit(args, text, [args.file])
    return 0


def _load_any_graph(args):
    path = args.file
    if path.startswith("family:"):
        return expand(load_classification(path), _need_n(args))
    raw = _read_bytes(path).decode()
    if raw.lstrip().startswith("{"):
        doc = json.loads(raw)
        if "orbits" in doc:
            return expand(load_classification(path), _need_n(args))
    try:
        return read_graph(raw)
    except GraphFormatError as exc:
        raise DomainError(f"{path}: {exc}") from None


def _need_n(args) -> int:
    if args.n is None:
        raise DomainError("--n is required for classification-graph input")
    return args.n


def cmd_alpha(args) -> int:
    g = _load_any_graph(args)
    code = 0
    try:
        res = max_independent_set(g, _budget(args))
        doc = {"alpha": res.alpha, "vertices": g.num_vertices, "edges": g.num_edges,
               "nodes_explored": res.nodes_explored, "status": "ok",
               "witness": [str(g.vertices[v]) for v in res.witness]}
    except BudgetExceeded as exc:
        code = 2
        doc = {"alpha": None, "lower_bound": exc.lower_bound, "upper_bound": exc.upper_bound,
               "vertices": g.num_vertices, "edges": g.num_edges,
               "nodes_explored": exc.nodes_explored, "status": "budget",
               "witness": [str(g.vertices[v]) for v in exc.witness]}
    if (args.format or "text") == "json":
        text = json.dumps(doc, indent=2) + "\n"
    elif doc["status"] == "ok":
        text = f"alpha = {doc['alpha']}\nwitness: {' '.join(doc['witness'])}\n"
    else:
        text = f"budget exhausted: {doc['lower_bound']} <= alpha <= {doc['upper_bound']}\n"
    _emit(args, text, [args.file])
    return code


def cmd_scan(args) -> int:
    c = load_classification(args.file)
    seq = scan_alpha(c, args.n_min, args.n_max, _budget(args))
    fmt = args.format or "csv"
    if fmt == "csv":
        text = seq.to_csv()
    elif fmt == "json":
        text = seq.to_json(witnesses=True)
    else:
        raise DomainError(f"format {fmt!r} not supported by scan")
    _emit(args, text, [args.file])
    return 0 if seq.complete else 2


def _load_sequence(path: str):
    raw = _read_bytes(path).decode()
    try:
        if raw.lstrip().startswith("{"):
            return sequence_from_json(raw)
        return sequence_from_csv(raw)
    except (ValueError, KeyError, TypeError) as exc:
        raise DomainError(f"{path}: {exc}") from None


def cmd_fit(args) -> int:
    seq = _load_sequence(args.seq_file)
    fit = fit_quasi_polynomial(seq, args.max_period, args.max_degree)
    try:
        rec = detect_recurrence(seq)
    except NoFit:
        rec = None
    if (args.format or "text") == "json":
        text = json.dumps({"fit": fit.to_dict(), "recurrence": rec.to_dict() if rec else None},
                          indent=2) + "\n"
    else:
        text = fit.text() + (rec.text() if rec else "no recurrence found\n")
    _emit(args, text, [args.seq_file])
    return 0


def cmd_random_sweep(args) -> int:
    if args.params:
        try:
            base = RandomGenParams.from_dict(json.loads(_read_bytes(args.params)))
        except (ValueError, TypeError) as exc:
            raise DomainError(f"{args.params}: {exc}") from None
    else:
        base = RandomGenParams(**TREND_PARAMS)
    master = random.Random(args.seed)
    rows = []
    code = 0
    for i in range(args.count):
        seed = master.getrandbits(64)
        params = RandomGenParams(base.pair, base.linear, base.singleton, base.p, seed)
        c = random_classification_graph(params)
        seq = scan_alpha(c, args.n_min, args.n_max, _budget(args))
        row = {"index": i, "seed": seed, "digest": c.digest(),
               "orbits": f"{c.count('pair')}P{c.count('linear')}L{c.count('singleton')}S",
               "alpha": " ".join("?" if r.alpha is None else str(r.alpha) for r in seq.rows)}
        fit = None
        if not seq.complete:
            code = 2
            row["status"] = "budget"
        else:
            try:
                fit = fit_quasi_polynomial(seq, args.max_period, args.max_degree)
                row["status"] = "ok"
            except (NoFit, InsufficientData):
                row["status"] = "nofit"
        if fit is not None:
            row.update(period=fit.period, degree=fit.degree, stable_degree=fit.stable_degree)
            report = check_trends(c, seq, fit)
            row.update({k: v.status for k, v in report.verdicts.items()})
        else:
            row.update(period="", degree="", stable_degree="", trend1="", trend2="", trend3="")
        rows.append(row)
    cols = ["index", "seed", "digest", "orbits", "status", "period", "degree", "stable_degree",
            "trend1", "trend2", "trend3", "alpha"]
    if (args.format or "csv") == "json":
        text = json.dumps({"params": base.to_dict(), "rows": rows}, indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow(row)
        text = buf.getvalue()
    _emit(args, text, [args.params] if args.params else [], seeds={"master": args.seed})
    return code


def cmd_verify(args) -> int:
    lines = []

    def echo(line):
        lines.append(line)
        print(line, flush=True)

    results = run_suite(args.suite, echo=echo)
    if args.out:
        Path(args.out).write_text("\n".join(lines) + "\n")
    return 0 if all(r.passed for r in results) else 1


def cmd_ideal(args) -> int:
    g = _load_any_graph(args)
    pres = edge_ideal(g)
    text = pres.to_json() if (args.format or "text") == "json" else pres.text()
    _emit(args, text, [args.file])
    return 0


# --- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="figraph", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"figraph {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        sp.add_argument("--out", help="write output here (plus a .manifest.json)")
        return sp

    def budget(sp):
        sp.add_argument("--budget-nodes", type=int, default=DEFAULT_BUDGET_NODES)
        sp.add_argument("--budget-secs", type=float, default=DEFAULT_BUDGET_SECS)

    fmt = lambda sp, choices: sp.add_argument("--format", choices=choices)  # noqa: E731

    sp = add("validate", cmd_validate, "check a classification-graph document")
    sp.add_argument("file")

    sp = add("expand", cmd_expand, "expand a classification graph at one n")
    sp.add_argument("file")
    sp.add_argument("--n", type=int, required=True)
    fmt(sp, ["dimacs", "json", "text"])

    sp = add("alpha", cmd_alpha, "independence number of one graph")
    sp.add_argument("file", help="classification graph (needs --n), graph JSON, or DIMACS")
    sp.add_argument("--n", type=int)
    budget(sp)
    fmt(sp, ["text", "json"])

    sp = add("scan", cmd_scan, "alpha over a range of n")
    sp.add_argument("file")
    sp.add_argument("--n-min", type=int, default=2)
    sp.add_argument("--n-max", type=int, default=12)
    budget(sp)
    fmt(sp, ["csv", "json"])

    sp = add("fit", cmd_fit, "fit a quasi-polynomial and a recurrence to a scan")
    sp.add_argument("seq_file")
    sp.add_argument("--max-period", type=int, default=4)
    sp.add_argument("--max-degree", type=int, default=3)
    fmt(sp, ["text", "json"])

    sp = add("random-sweep", cmd_random_sweep, "scan, fit and trend-check random families")
    sp.add_argument("params", nargs="?", help="JSON RandomGenParams (seed ignored)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=10)
    sp.add_argument("--n-min", type=int, default=2)
    sp.add_argument("--n-max", type=int, default=12)
    sp.add_argument("--max-period", type=int, default=4)
    sp.add_argument("--max-degree", type=int, default=3)
    budget(sp)
    fmt(sp, ["csv", "json"])

    sp = add("verify", cmd_verify, "run a named verification suite")
    sp.add_argument("suite", choices=sorted(SUITES))

    sp = add("ideal", cmd_ideal, "edge ideal and Krull dimension of G_n or a graph")
    sp.add_argument("file")
    sp.add_argument("--n", type=int)
    fmt(sp, ["text", "json"])
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, ValidationError, ParseError, NoFit, InsufficientData, TooLarge,
            GraphFormatError, ValueError) as exc:
        message = str(exc)
        if isinstance(exc.__cause__, (ValidationError, ParseError)):
            exc = exc.__cause__
        err = {"error": type(exc).__name__, "message": message, "command": args.command}
        if isinstance(exc, ValidationError):
            err.update(rule=exc.rule, where=exc.where)
        print(json.dumps(err), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
