"""Convergent firing sequences for the finite types, and a strategy-agreement probe.

The A-D generators are built from blocks ``s_i``; the exceptional sequences
are stored literally.  Each plan knows the terminal position it must reach
from a strongly dominant start.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .catalog import DynkinType, RankOutOfRange
from .core import (FiringSequence, GameTrace, GcmGraph, GreedyMax, GreedyMin, Position,
                   RandomSeeded, run_game, to_fraction)

REVERSE_NEGATE = "reverse-negate"
NEGATE = "negate"
NEGATE_D_PARITY = "negate-with-D-parity-swap"
E6_PERMUTED = "E6-permuted-negate"


def expected_length(t: DynkinType | str) -> int:
    """Length of every game sequence from a strongly dominant position."""
    t = DynkinType.parse(t) if isinstance(t, str) else t
    n = t.n
    if t.family == "A":
        return n * (n + 1) // 2
    if t.family in ("B", "C"):
        return n * n
    if t.family == "D":
        return n * (n - 1)
    return {"E6": 36, "E7": 63, "E8": 120, "F4": 24, "G2": 6}[str(t)]


@dataclass(frozen=True)
class ConvergentPlan:
    type: DynkinType
    sequence: FiringSequence
    expected_length: int
    terminal_rule: str

    def terminal(self, position: Position | Sequence) -> Position:
        """Where the plan ends when played from ``position``."""
        a = list(position.values if isinstance(position, Position) else map(to_fraction, position))
        rule = self.terminal_rule
        if rule == REVERSE_NEGATE:
            return Position(-x for x in reversed(a))
        if rule == NEGATE:
            return Position(-x for x in a)
        if rule == NEGATE_D_PARITY:
            out = [-x for x in a]
            if self.type.n % 2:
                out[-2], out[-1] = out[-1], out[-2]
            return Position(out)
        if rule == E6_PERMUTED:
            a1, b, c, d, e, f = a
            return Position((-f, -b, -e, -d, -c, -a1))
        raise ValueError(f"unknown terminal rule {rule!r}")


# BLOCKS
# ------

_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}


def _check_classical(t: DynkinType, least: dict[str, int]) -> None:
    if t.family not in least:
        raise RankOutOfRange(f"{t} is not of type A, B, C or D")
    if t.n < least[t.family]:
        raise RankOutOfRange(f"{t.family} needs rank at least {least[t.family]}")


def _block(t: DynkinType, i: int) -> list[int]:
    """The subsequence s_i."""
    n = t.n
    if t.family == "A":
        return list(range(i, n + 1))
    if t.family in ("B", "C"):
        if i == n:
            return [n]
        return list(range(i, n + 1)) + list(range(n - 1, i - 1, -1))
    if i == n - 1:
        return [n - 1, n]
    return list(range(i, n - 1)) + [n - 1, n] + list(range(n - 2, i - 1, -1))


def _top(t: DynkinType) -> int:
    return t.n - 1 if t.family == "D" else t.n


def lemma21_sequence(t: DynkinType | str) -> FiringSequence:
    """(s_top, ..., s_2): everything but the final block of the full sequence."""
    t = DynkinType.parse(t) if isinstance(t, str) else t
    _check_classical(t, {"A": 2, "B": 2, "C": 3, "D": 4})
    seq: list[int] = []
    for i in range(_top(t), 1, -1):
        seq += _block(t, i)
    return FiringSequence(seq)


def lemma21_position(graph: GcmGraph, t: DynkinType, a: Sequence) -> Position:
    """The position reached by :func:`lemma21_sequence` from ``a``.

    The first entry is a weighted sum of the start; its weights come from the
    graph's last edge so that a rank-two B diagram drawn either way is handled.
    """
    a = [to_fraction(x) for x in a]
    n = t.n
    if t.family == "A":
        return Position([sum(a)] + [-x for x in reversed(a[1:])])
    if t.family in ("B", "C"):
        last = -graph.matrix(n, n - 1)
        first = a[0] + 2 * sum(a[1:n - 1]) + last * a[n - 1]
        return Position([first] + [-x for x in a[1:]])
    first = a[0] + 2 * sum(a[1:n - 2]) + a[n - 2] + a[n - 1]
    tail = [-a[n - 2], -a[n - 1]]
    if n % 2 == 0:
        tail.reverse()
    return Position([first] + [-x for x in a[1:n - 2]] + tail)


def lemma22_sequence(t: DynkinType | str) -> ConvergentPlan:
    t = DynkinType.parse(t) if isinstance(t, str) else t
    _check_classical(t, _MIN_RANK)
    seq: list[int] = []
    for i in range(_top(t), 0, -1):
        seq += _block(t, i)
    rule = {"A": REVERSE_NEGATE, "B": NEGATE, "C": NEGATE, "D": NEGATE_D_PARITY}[t.family]
    return ConvergentPlan(t, FiringSequence(seq), expected_length(t), rule)


# EXCEPTIONAL TYPES
# -----------------

_G2 = (1, 2, 1, 2, 1, 2)
_F4 = (
    1, 2, 3, 4, 3, 2, 1, 2, 3, 4, 2, 3, 2, 1, 4, 3, 2, 3, 4, 2, 1, 3, 2, 3)
_E6 = (
    1, 2, 3, 4, 3, 2, 1, 4, 3, 4, 5, 4, 2, 3, 4, 1, 3, 5, 6, 4, 5, 4, 2, 3, 1, 4, 3, 1, 5,
    4, 2, 6, 5, 4, 3, 1)
_E7 = _E6 + (
    7, 6, 5, 4, 2, 3, 1, 4, 3, 5, 4, 2, 6, 5, 4, 3, 1, 7, 6, 5, 4, 2, 3, 4, 5, 6, 7)
_E8 = _E7 + (
    8, 7, 6, 5, 4, 2, 3, 1, 4, 3, 5, 4, 2, 6, 5, 4, 3, 1, 7, 6, 5, 4, 2, 3, 4, 5, 6, 7, 8,
    7, 6, 5, 4, 2, 3, 1, 4, 3, 5, 4, 2, 6, 7, 5, 6, 4, 3, 1, 5, 4, 2, 3, 4, 5, 6, 7, 8)

_EXCEPTIONAL = {"G2": _G2, "F4": _F4, "E6": _E6, "E7": _E7, "E8": _E8}


def exceptional_sequence(t: DynkinType | str) -> ConvergentPlan:
    t = DynkinType.parse(t) if isinstance(t, str) else t
    key = str(t)
    if key not in _EXCEPTIONAL:
        raise RankOutOfRange(f"{t} has no stored exceptional sequence")
    rule = E6_PERMUTED if key == "E6" else NEGATE
    return ConvergentPlan(t, FiringSequence(_EXCEPTIONAL[key]), expected_length(t), rule)


def convergent_plan(t: DynkinType | str) -> ConvergentPlan:
    t = DynkinType.parse(t) if isinstance(t, str) else t
    return exceptional_sequence(t) if t.family in "EFG" else lemma22_sequence(t)


# STRONG CONVERGENCE PROBE
# ------------------------

@dataclass(frozen=True)
class ProbeRun:
    strategy: str
    kind: str
    steps: int
    terminal: Position | None


@dataclass(frozen=True)
class ProbeReport:
    runs: tuple[ProbeRun, ...]

    @property
    def agree(self) -> bool:
        first = self.runs[0]
        return all((r.kind, r.steps, r.terminal) == (first.kind, first.steps, first.terminal)
                   for r in self.runs)

    @property
    def kind(self) -> str:
        return self.runs[0].kind if self.agree else "mixed"

    @property
    def terminal(self) -> Position | None:
        return self.runs[0].terminal if self.agree else None

    @property
    def steps(self) -> int | None:
        return self.runs[0].steps if self.agree else None


def trial_seed(seed: int, trial: int) -> int:
    """Independent, reproducible stream per (seed, trial)."""
    return seed * 1_000_003 + trial


def _run(trace: GameTrace, name: str) -> ProbeRun:
    terminal = trace.final if trace.outcome.kind == "converged" else None
    return ProbeRun(name, trace.outcome.kind, len(trace), terminal)


def strong_convergence_probe(g: GcmGraph, position: Position, trials: int = 20, seed: int = 0,
                             budget: int = 10_000) -> ProbeReport:
    """Play GreedyMin, GreedyMax and ``trials`` random games and record whether they agree."""
    runs = [_run(run_game(g, position, GreedyMin(), budget), GreedyMin.name),
            _run(run_game(g, position, GreedyMax(), budget), GreedyMax.name)]
    for t in range(trials):
        s = trial_seed(seed, t)
        runs.append(_run(run_game(g, position, RandomSeeded(s), budget), f"random:{s}"))
    return ProbeReport(tuple(runs))


__all__ = [
    "ConvergentPlan", "ProbeReport", "ProbeRun", "convergent_plan", "exceptional_sequence",
    "expected_length", "lemma21_position", "lemma21_sequence", "lemma22_sequence",
    "strong_convergence_probe", "trial_seed",
]
