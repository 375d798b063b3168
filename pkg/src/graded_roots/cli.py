"""Command-line front end: ``graded-roots <command>``.

Graphs travel as JSON on stdin/stdout so commands compose, e.g.
``graded-roots brieskorn 2 3 11 | graded-roots hf``. A JSON list on stdin
switches to batch mode (``--jobs`` workers, output in input order).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial

from . import cobordism, contact, corpus, laufer, plumbing, umodule
from .config import FORMATS, Config
from .errors import (
    GradedRootsError,
    IterationCapExceeded,
    MathPreconditionError,
    ParseError,
)

EXIT_OK, EXIT_INTERNAL, EXIT_PARSE, EXIT_MATH, EXIT_CAP = 0, 1, 2, 3, 4


def exit_code(exc: BaseException) -> int:
    if isinstance(exc, ParseError):
        return EXIT_PARSE
    if isinstance(exc, MathPreconditionError):
        return EXIT_MATH
    if isinstance(exc, IterationCapExceeded):
        return EXIT_CAP
    return EXIT_INTERNAL


def _json_default(x):
    if x == float("-inf"):
        return "-inf"
    if x == float("inf"):
        return "inf"
    raise TypeError(f"not serializable: {x!r}")


def dumps(obj) -> str:
    return json.dumps(obj, default=_json_default, ensure_ascii=False)


# --- per-graph commands (module level so worker processes can pickle them) ---

def _graph(data, cfg: Config, b0: int | None) -> plumbing.PlumbingGraph:
    if not isinstance(data, dict):
        raise ParseError("expected a graph JSON object")
    if b0 is not None:
        data = {**data, "base": b0}
    return plumbing.graph_from_dict(data)


def id_map_report(graph: plumbing.PlumbingGraph) -> dict | None:
    """Input id -> canonical id, or None when the input was already canonical."""
    mapping = graph.id_mapping()
    if all(k == v for k, v in mapping.items()):
        return None
    return {str(k): v for k, v in sorted(mapping.items())}


def run_classify(graph, cfg: Config, args) -> dict:
    res = contact.classify_link(graph, cfg.ar_bound, **cfg.trace_kwargs())
    out = res.to_dict()
    out.pop("root", None)
    out["det"] = plumbing.det(graph)
    out["K2"] = str(plumbing.k_squared(graph))
    return out


def run_root(graph, cfg: Config, args):
    trace = laufer.laufer_trace(graph, **cfg.trace_kwargs())
    root = laufer.graded_root(trace)
    if cfg.format == "dot":
        return root.to_dot()
    return {"trace": trace.to_dict(), "root": root.to_dict(),
            "extrema": [list(e) for e in laufer.tau_extrema(trace)]}


def run_hf(graph, cfg: Config, args) -> dict:
    return umodule.hf_plus(graph, **cfg.trace_kwargs()).to_dict()


def run_sigma(graph, cfg: Config, args) -> dict:
    if args.char is None:
        raise ParseError("sigma needs --char on graph input (or --family n m)")
    k = _parse_int_list(args.char)
    if len(k) != graph.size:
        raise ParseError(f"--char has {len(k)} entries, graph has {graph.size} vertices")
    if graph.input_ids is not None:
        # --char is given in input ids; move it to canonical order
        k = [k[graph.input_ids[j]] for j in range(graph.size)]
    return contact.locate_contact(graph, k, **cfg.trace_kwargs()).to_dict()


GRAPH_COMMANDS = {
    "classify": run_classify,
    "root": run_root,
    "hf": run_hf,
    "sigma": run_sigma,
}


def _run_one(name, cfg, args, data):
    """Worker body: returns (ok, payload, stderr lines)."""
    notes = []
    try:
        graph = _graph(data, cfg, args.b0)
        report = id_map_report(graph)
        if report is not None:
            notes.append(dumps({"id_map": report}))
        return True, GRAPH_COMMANDS[name](graph, cfg, args), notes
    except GradedRootsError as exc:
        return False, (type(exc).__name__, str(exc), exit_code(exc)), notes


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace("[", " ").replace("]", " ").replace(",", " ").split()]
    except ValueError as exc:
        raise ParseError(f"bad integer list {text!r}") from exc


def _read_json(stream):
    text = stream.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON on stdin: {exc}") from exc


def _emit(payload, cfg: Config, out) -> None:
    if isinstance(payload, str):
        out.write(payload)
    elif cfg.format == "text":
        out.write(_text(payload) + "\n")
    else:
        out.write(dumps(payload) + "\n")


def _nested(v) -> bool:
    return isinstance(v, dict) or (isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v))


def _text(payload, indent: str = "") -> str:
    """Indented key: value rendering; leaves are JSON-encoded."""
    if isinstance(payload, dict):
        lines = []
        for k, v in payload.items():
            if _nested(v):
                lines += [f"{indent}{k}:", _text(v, indent + "  ")]
            else:
                lines.append(f"{indent}{k}: {dumps(v)}")
        return "\n".join(lines)
    if isinstance(payload, list) and _nested(payload):
        items = []
        for x in payload:
            # first line gets the dash, the rest align under it
            body = _text(x, indent + "  ") if isinstance(x, (dict, list)) else f"{indent}  {dumps(x)}"
            items.append(f"{indent}- " + body[len(indent) + 2:])
        return "\n".join(items)
    return f"{indent}{dumps(payload)}"


def _report_error(name: str, message: str, err) -> None:
    err.write(dumps({"error": name, "message": message}) + "\n")


def run_graph_command(name: str, cfg: Config, args, stdin, out, err) -> int:
    data = _read_json(stdin)
    batch = isinstance(data, list)
    items = data if batch else [data]
    work = partial(_run_one, name, cfg, args)
    if cfg.jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(work, items))
    else:
        results = [work(d) for d in items]
    code = EXIT_OK
    payloads = []
    for ok, payload, notes in results:
        for line in notes:
            err.write(line + "\n")
        if ok:
            payloads.append(payload)
        else:
            ename, msg, c = payload
            _report_error(ename, msg, err)
            payloads.append({"error": ename, "message": msg})
            code = code or c
    if batch:
        if all(isinstance(p, str) for p in payloads):
            for p in payloads:
                _emit(p, cfg, out)
        else:
            _emit(payloads, cfg, out)
    elif results[0][0]:
        _emit(payloads[0], cfg, out)
    return code


# --- standalone commands -----------------------------------------------------

def cmd_brieskorn(args, cfg, stdin, out):
    _emit(plumbing.graph_to_dict(plumbing.brieskorn_graph(args.p, args.q, args.r)), cfg, out)


def cmd_sigma_family(args, cfg, stdin, out):
    n, m = args.family
    graph, k = contact.stein_family_chern(n, m)
    _emit(contact.locate_contact(graph, k, **cfg.trace_kwargs()).to_dict(), cfg, out)


def cmd_plan(args, cfg, stdin, out):
    if args.wordfile == "-":
        text = stdin.read()
    else:
        try:
            with open(args.wordfile, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {args.wordfile}: {exc}") from exc
    word = cobordism.parse_word(text)
    plan = cobordism.plan_stein_cobordism(word, args.n)
    if args.target_graph:
        _emit(plumbing.graph_to_dict(plumbing.brieskorn_graph(*plan.target)), cfg, out)
    else:
        _emit(plan.to_dict(), cfg, out)


def cmd_semigroup_tau(args, cfg, stdin, out):
    _emit(contact.semigroup_tau(args.p, args.q).to_dict(), cfg, out)


def cmd_corpus(args, cfg, stdin, out):
    graphs = corpus.ar_star_graphs(cfg.seed, args.count)
    _emit([plumbing.graph_to_dict(g) for g in graphs], cfg, out)


def cmd_tau(args, cfg, stdin, out):
    rng = random.Random(cfg.seed)
    _emit([list(corpus.random_tau(rng, args.length)) for _ in range(args.count)], cfg, out)


# --- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--b0", type=int, default=None, help="base vertex (input id)")
    common.add_argument("--max-iter", type=int, default=None,
                        help="iteration cap (default: $GRADED_ROOTS_MAX_ITER or 10^6)")
    common.add_argument("--ar-bound", type=int, default=None, help="AR search bound D")
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="graded-roots", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("brieskorn", parents=[common], help="plumbing graph of Sigma(p,q,r)")
    for name in "pqr":
        s.add_argument(name, type=int)

    sub.add_parser("classify", parents=[common], help="rational / proper AR / not detected")
    sub.add_parser("root", parents=[common], help="Laufer trace and graded root")
    sub.add_parser("hf", parents=[common], help="HF+(-M) in the canonical spin^c structure")

    s = sub.add_parser("sigma", parents=[common], help="locate a contact class and its sigma")
    s.add_argument("--char", default=None, help="characteristic vector, e.g. '0,0,-1'")
    s.add_argument("--family", nargs=2, type=int, metavar=("N", "M"), default=None,
                   help="J_m on Sigma(3, 3n+1, 9n+2); no stdin needed")

    s = sub.add_parser("plan", parents=[common], help="Stein cobordism plan for a monodromy word")
    s.add_argument("wordfile", nargs="?", default="-")
    s.add_argument("--n", type=int, default=None)
    s.add_argument("--target-graph", action="store_true")

    s = sub.add_parser("semigroup-tau", parents=[common], help="tau extrema of Sigma(p,q,pq-1)")
    s.add_argument("p", type=int)
    s.add_argument("q", type=int)

    s = sub.add_parser("corpus", parents=[common], help="seeded random AR star graphs")
    s.add_argument("--count", type=int, default=50)

    s = sub.add_parser("random-tau", parents=[common], help="seeded random tau sequences")
    s.add_argument("--count", type=int, default=10)
    s.add_argument("--length", type=int, default=8)
    return p


STANDALONE = {
    "brieskorn": cmd_brieskorn,
    "plan": cmd_plan,
    "semigroup-tau": cmd_semigroup_tau,
    "corpus": cmd_corpus,
    "random-tau": cmd_tau,
}


def main(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        cfg = Config(args.max_iter, args.ar_bound, args.format, args.seed, args.jobs)
        if args.command in STANDALONE:
            STANDALONE[args.command](args, cfg, stdin, out)
            return EXIT_OK
        if args.command == "sigma" and args.family is not None:
            cmd_sigma_family(args, cfg, stdin, out)
            return EXIT_OK
        return run_graph_command(args.command, cfg, args, stdin, out, err)
    except GradedRootsError as exc:
        _report_error(type(exc).__name__, str(exc), err)
        return exit_code(exc)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
