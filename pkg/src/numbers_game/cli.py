"""Command-line front end.

Graph files look like::

    gcm 1
    nodes 3
    edge 1 2 1 1
    edge 2 3 1 2

where ``edge i j p q`` sets M_ij = -p and M_ji = -q.  Anywhere a graph file
is expected, ``@Name`` picks a catalog graph instead (``@B2``, ``@Atilde:5``).

Exit codes: 0 success, 1 bad input, 2 budget exhausted, 3 verification failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, TextIO

from .catalog import (BadParameters, DynkinType, InadmissibleFamilyId, NotConnected, RankOutOfRange,
                      UnknownFamily, build_finite, build_inadmissible, classify_finite, isomorphisms,
                      parse_catalog_name)
from .core import (GameTrace, GcmError, GcmGraph, GreedyMax, GreedyMin, Position, RandomSeeded,
                   fire, legal_moves, play_sequence, run_game)
from .divergence import IndexOutOfRange, certificate_catalog, verify_all, verify_certificate
from .divergence.verify import VERIFICATION_ERRORS, fraction_text
from .strategies import strong_convergence_probe

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_EXHAUSTED = 2
EXIT_UNVERIFIED = 3

TRACE_VERSION = 1


class GraphSyntaxError(ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class InvalidGcm(ValueError):
    """The file parsed but its matrix is not a generalized Cartan matrix."""

    def __init__(self, cause: GcmError):
        self.cause = cause
        super().__init__(f"invalid GCM: {cause}")


class UsageError(ValueError):
    pass


# GRAPH FILES
# -----------

@dataclass(frozen=True)
class GraphFile:
    graph: GcmGraph
    # edges in the order written, needed to pick a relabeling that reads like the file
    edges: tuple[tuple[int, int, int, int], ...]


def _positive_int(token: str, line: int, what: str) -> int:
    if not token.isdigit() or int(token) < 1:
        raise GraphSyntaxError(line, f"{what} must be a positive integer, got {token!r}")
    return int(token)


def parse_graph_file(text: str) -> GraphFile:
    stripped = text.strip()
    if stripped.startswith("@"):
        try:
            graph = parse_catalog_name(stripped[1:])
        except (BadParameters, UnknownFamily, RankOutOfRange) as exc:
            raise GraphSyntaxError(1, str(exc)) from None
        return GraphFile(graph, tuple(graph.edge_list()))

    lines = [(k, ln.split("#", 1)[0].split()) for k, ln in enumerate(text.splitlines(), start=1)]
    lines = [(k, toks) for k, toks in lines if toks]
    if not lines or lines[0][1] != ["gcm", "1"]:
        raise GraphSyntaxError(lines[0][0] if lines else 1, "expected header 'gcm 1'")
    if len(lines) < 2 or len(lines[1][1]) != 2 or lines[1][1][0] != "nodes":
        raise GraphSyntaxError(lines[1][0] if len(lines) > 1 else 2, "expected 'nodes <n>'")
    n = _positive_int(lines[1][1][1], lines[1][0], "node count")

    edges = []
    seen = set()
    for k, toks in lines[2:]:
        if toks[0] != "edge" or len(toks) != 5:
            raise GraphSyntaxError(k, "expected 'edge <i> <j> <p> <q>'")
        i, j = (_positive_int(t, k, "node") for t in toks[1:3])
        p, q = (_positive_int(t, k, "amplitude") for t in toks[3:5])
        if i > n or j > n:
            raise GraphSyntaxError(k, f"node out of range 1..{n}")
        if i == j:
            raise GraphSyntaxError(k, "an edge needs two distinct nodes")
        key = frozenset((i, j))
        if key in seen:
            raise GraphSyntaxError(k, f"duplicate edge between {i} and {j}")
        seen.add(key)
        edges.append((i, j, p, q))
    try:
        graph = GcmGraph.from_edges(n, edges)
    except GcmError as exc:
        raise InvalidGcm(exc) from None
    return GraphFile(graph, tuple(edges))


def parse_graph(text: str) -> GcmGraph:
    return parse_graph_file(text).graph


def print_graph(graph: GcmGraph) -> str:
    out = ["gcm 1", f"nodes {graph.n}"]
    out += [f"edge {i} {j} {p} {q}" for i, j, p, q in graph.edge_list()]
    return "\n".join(out) + "\n"


def load_graph(arg: str) -> GraphFile:
    """``@Name`` or a path to a graph file."""
    if arg.startswith("@"):
        return parse_graph_file(arg)
    try:
        with open(arg, encoding="utf-8") as fh:
            return parse_graph_file(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read graph file {arg!r}: {exc.strerror}") from None


def parse_position(text: str, graph: GcmGraph) -> Position:
    try:
        pos = Position.parse(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad position {text!r}; use comma-separated rationals like 1/2,0,-3") from None
    if len(pos) != graph.n:
        raise UsageError(f"position has {len(pos)} entries, graph has {graph.n} nodes")
    return pos


# TRACE FILES
# -----------

def _vec(pos: Position) -> list[str]:
    return [fraction_text(v) for v in pos.values]


def _unvec(items: Sequence[str]) -> Position:
    return Position(Fraction(s) for s in items)


def trace_to_dict(trace: GameTrace) -> dict:
    outcome = {"kind": trace.outcome.kind, "steps": len(trace)}
    if trace.outcome.kind == "converged":
        outcome["terminal"] = _vec(trace.final)
    return {
        "version": TRACE_VERSION,
        "graph": {"nodes": trace.graph.n, "edges": [list(e) for e in trace.graph.edge_list()]},
        "initial": _vec(trace.initial),
        "steps": [{"fired": i, "position": _vec(p)} for i, p in trace.steps],
        "outcome": outcome,
    }


def replay_trace(data: dict) -> GameTrace:
    """Replay a trace file through the core engine and check every recorded position."""
    if data.get("version") != TRACE_VERSION:
        raise ValueError(f"unsupported trace version {data.get('version')!r}")
    graph = GcmGraph.from_edges(data["graph"]["nodes"], [tuple(e) for e in data["graph"]["edges"]])
    initial = _unvec(data["initial"])
    trace = play_sequence(graph, initial, [s["fired"] for s in data["steps"]])
    for k, (step, (_, pos)) in enumerate(zip(data["steps"], trace.steps), start=1):
        if _unvec(step["position"]) != pos:
            raise ValueError(f"step {k}: recorded {step['position']} but replay gives {pos}")
    terminal = data["outcome"].get("terminal")
    if terminal is not None and _unvec(terminal) != trace.final:
        raise ValueError(f"recorded terminal {terminal} but replay gives {trace.final}")
    return trace


# COMMANDS
# --------

def _strategy(name: str, seed: int):
    if name == "greedy-min":
        return GreedyMin()
    if name == "greedy-max":
        return GreedyMax()
    if name == "random":
        return RandomSeeded(seed)
    raise UsageError(f"unknown strategy {name!r}; choose greedy-min, greedy-max or random")


def _summary(trace: GameTrace) -> str:
    if trace.outcome.kind == "converged":
        return f"steps={len(trace)} terminal={trace.final}"
    return f"steps={len(trace)} exhausted"


def command_play(args, out: TextIO) -> int:
    graph = load_graph(args.graph).graph
    pos = parse_position(args.position, graph)
    if args.budget < 1:
        raise UsageError("--budget must be at least 1")
    trace = run_game(graph, pos, _strategy(args.strategy, args.seed), args.budget)
    if args.trace_out:
        try:
            with open(args.trace_out, "w", encoding="utf-8") as fh:
                json.dump(trace_to_dict(trace), fh)
        except OSError as exc:
            raise UsageError(f"cannot write trace {args.trace_out!r}: {exc.strerror}") from None
    print(_summary(trace), file=out)
    return EXIT_OK if trace.outcome.kind == "converged" else EXIT_EXHAUSTED


def _landing_text(graph: GcmGraph, cert) -> str:
    landing = play_sequence(graph, cert.start, cert.prefix).final
    prefix = ",".join(f"γ{i}" for i in cert.prefix)
    return f"prefix ({prefix}) landing ({landing})"


def command_verify(args, out: TextIO) -> int:
    try:
        fid = InadmissibleFamilyId.parse(args.family)
    except UnknownFamily:
        raise UsageError(f"{args.family!r} is not an inadmissible-catalog family") from None
    except BadParameters as exc:
        raise UsageError(str(exc)) from None
    graph = build_inadmissible(fid)

    if args.omega is not None:
        try:
            cert = certificate_catalog(fid, args.omega)
        except IndexOutOfRange as exc:
            raise UsageError(str(exc)) from None
        try:
            verify_certificate(graph, cert)
        except VERIFICATION_ERRORS as exc:
            print(f"omega {args.omega}: FAILED [{cert.kind}] {type(exc).__name__}: {exc}", file=out)
            return EXIT_UNVERIFIED
        print(f"omega {args.omega}: verified [{cert.kind}] {_landing_text(graph, cert)}", file=out)
        print("1/1 certificates verified", file=out)
        return EXIT_OK

    report = verify_all(fid)
    for v in report.verdicts:
        if v.verified:
            print(f"omega {v.omega}: verified [{v.kind}]", file=out)
        else:
            print(f"omega {v.omega}: FAILED [{v.kind}] {v.error}", file=out)
    print(report.summary(), file=out)
    return EXIT_OK if report.passed else EXIT_UNVERIFIED


def _preferred_relabeling(gf: GraphFile, t: DynkinType, first):
    """Among all relabelings onto the canonical diagram, the one under which the
    file's edges, in the order written, read most like the canonical listing."""
    def key(sigma):
        return [(sigma(i), sigma(j)) for i, j, _, _ in gf.edges], sigma.mapping
    candidates = list(isomorphisms(gf.graph, build_finite(t))) or [first]
    return min(candidates, key=key)


def command_classify(args, out: TextIO) -> int:
    gf = load_graph(args.graph)
    try:
        found = classify_finite(gf.graph)
    except NotConnected:
        found = None
    if found is None:
        print("not finite type", file=out)
        return EXIT_OK
    t, sigma = found
    sigma = _preferred_relabeling(gf, t, sigma)
    if sigma.is_identity:
        print(f"finite-type {t}", file=out)
    else:
        print(f"finite-type {t} via σ={sigma}", file=out)
    return EXIT_OK


def command_repl(args, out: TextIO, inp: TextIO) -> int:
    graph = load_graph(args.graph).graph
    history = [parse_position(args.position, graph)]

    def show():
        moves = legal_moves(graph, history[-1])
        print(f"position: {history[-1]}  legal: {' '.join(map(str, moves))}", file=out)
        return moves

    def finish() -> int:
        print(f"terminal: {history[-1]} ({len(history) - 1} firings)", file=out)
        return EXIT_OK

    moves = show()
    if not moves:
        return finish()
    for raw in inp:
        cmd = raw.strip()
        if not cmd:
            continue
        if cmd == "quit":
            return EXIT_OK
        if cmd == "undo":
            if len(history) == 1:
                print("nothing to undo", file=out)
            else:
                history.pop()
        elif cmd == "auto":
            trace = run_game(graph, history[-1], GreedyMin(), args.budget)
            history.extend(p for _, p in trace.steps)
            if trace.outcome.kind != "converged":
                print(f"exhausted after {len(history) - 1} firings", file=out)
                return EXIT_EXHAUSTED
            return finish()
        elif cmd.lstrip("-").isdigit():
            node = int(cmd)
            if not 1 <= node <= graph.n:
                print("no such node", file=out)
            elif node not in moves:
                print(f"node {node} is not positive; pick one of the legal moves", file=out)
            else:
                history.append(fire(graph, history[-1], node))
        else:
            print("commands: <node>, undo, auto, quit", file=out)
        moves = show()
        if not moves:
            return finish()
    return EXIT_OK


def command_probe(args, out: TextIO) -> int:
    graph = load_graph(args.graph).graph
    pos = parse_position(args.position, graph)
    report = strong_convergence_probe(graph, pos, args.trials, args.seed, args.budget)
    if not report.agree:
        for r in report.runs:
            print(f"{r.strategy}: {r.kind} steps={r.steps} terminal={r.terminal}", file=out)
        print(f"strategies disagree over {len(report.runs)} runs", file=out)
        return EXIT_UNVERIFIED
    if report.kind == "converged":
        print(f"{len(report.runs)} runs agree: steps={report.steps} terminal={report.terminal}", file=out)
        return EXIT_OK
    print(f"{len(report.runs)} runs agree: steps={report.steps} exhausted", file=out)
    return EXIT_EXHAUSTED


# ENTRY POINT
# -----------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="numbers-game", description="Play and analyse the numbers game on GCM graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    play = sub.add_parser("play", help="play one game and print its outcome")
    play.add_argument("--graph", required=True, help="graph file or @CatalogName")
    play.add_argument("--position", required=True, help="comma-separated rationals")
    play.add_argument("--strategy", default="greedy-min", help="greedy-min, greedy-max or random")
    play.add_argument("--budget", type=int, default=10_000)
    play.add_argument("--seed", type=int, default=0, help="seed for --strategy random")
    play.add_argument("--trace-out", help="write a JSON trace here")

    verify = sub.add_parser("verify", help="check divergence certificates for a family")
    verify.add_argument("--family", required=True, help="e.g. Atilde:4, Gtilde1, Tri2:p1=1,q1=2,p2=2,q2=1")
    which = verify.add_mutually_exclusive_group(required=True)
    which.add_argument("--all", action="store_true")
    which.add_argument("--omega", type=int)

    classify = sub.add_parser("classify", help="recognise a finite-type diagram")
    classify.add_argument("--graph", required=True)

    repl = sub.add_parser("repl", help="fire nodes by hand")
    repl.add_argument("--graph", required=True)
    repl.add_argument("--position", required=True)
    repl.add_argument("--budget", type=int, default=10_000, help="budget for the auto command")

    probe = sub.add_parser("probe", help="check that many strategies agree")
    probe.add_argument("--graph", required=True)
    probe.add_argument("--position", required=True)
    probe.add_argument("--trials", type=int, default=20)
    probe.add_argument("--seed", type=int, default=0)
    probe.add_argument("--budget", type=int, default=10_000)
    return parser


def main(argv: Optional[Sequence[str]] = None, stdin: Optional[TextIO] = None,
         stdout: Optional[TextIO] = None) -> int:
    out = stdout or sys.stdout
    inp = stdin or sys.stdin
    try:
        args = build_parser().parse_args(argv)
        if args.command == "play":
            return command_play(args, out)
        if args.command == "verify":
            return command_verify(args, out)
        if args.command == "classify":
            return command_classify(args, out)
        if args.command == "repl":
            return command_repl(args, out, inp)
        return command_probe(args, out)
    except (UsageError, GraphSyntaxError, InvalidGcm) as exc:
        print(f"error: {exc}", file=out)
        return EXIT_INPUT


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
