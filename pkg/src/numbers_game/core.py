"""GCM graphs, positions, the firing rule and budgeted game play.

Nodes are numbered 1..n throughout the public API, matching gamma_1..gamma_n.
Positions hold exact rationals; there is no floating point mode.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Iterator, Sequence, Union

Number = Union[int, Fraction, str]


# ERRORS
# ------

class GcmError(ValueError):
    """Base class for amplitude matrices that are not generalized Cartan matrices."""


class BadDiagonal(GcmError):
    def __init__(self, i: int, value: int):
        self.i, self.value = i, value
        super().__init__(f"M[{i},{i}] = {value}, expected 2")


class PositiveOffDiagonal(GcmError):
    def __init__(self, i: int, j: int, value: int):
        self.i, self.j, self.value = i, j, value
        super().__init__(f"M[{i},{j}] = {value} is positive")


class AsymmetricZero(GcmError):
    def __init__(self, i: int, j: int):
        self.i, self.j = i, j
        super().__init__(f"M[{i},{j}] and M[{j},{i}] disagree on being zero")


class IllegalFiring(ValueError):
    def __init__(self, node: int, value: Fraction):
        self.node, self.value = node, value
        super().__init__(f"cannot fire node {node}: value {value} is not positive")


class IllegalFiringAt(ValueError):
    """Raised by play_sequence; ``trace`` holds the legal prefix."""

    def __init__(self, step: int, node: int, trace: "GameTrace"):
        self.step, self.node, self.trace = step, node, trace
        super().__init__(f"firing {step} (node {node}) is illegal")


# MATRICES AND GRAPHS
# -------------------

@dataclass(frozen=True)
class AmplitudeMatrix:
    entries: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    def __call__(self, i: int, j: int) -> int:
        """M_ij with 1-based indices."""
        return self.entries[i - 1][j - 1]

    def as_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


def validate_matrix(entries: Sequence[Sequence[int]]) -> AmplitudeMatrix:
    """Check the three GCM axioms, reporting the first violation in row-major order."""
    n = len(entries)
    if n < 1 or any(len(row) != n for row in entries):
        raise GcmError("amplitude matrix must be square with n >= 1")
    rows = tuple(tuple(int(x) for x in row) for row in entries)
    for i in range(n):
        for j in range(n):
            v = rows[i][j]
            if i == j:
                if v != 2:
                    raise BadDiagonal(i + 1, v)
            elif v > 0:
                raise PositiveOffDiagonal(i + 1, j + 1, v)
            elif (v == 0) != (rows[j][i] == 0):
                raise AsymmetricZero(i + 1, j + 1)
    return AmplitudeMatrix(rows)


@dataclass(frozen=True)
class GcmGraph:
    matrix: AmplitudeMatrix

    @classmethod
    def from_entries(cls, entries: Sequence[Sequence[int]]) -> "GcmGraph":
        return cls(validate_matrix(entries))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, int, int]]) -> "GcmGraph":
        """Build from (i, j, p, q) meaning M_ij = -p and M_ji = -q."""
        m = [[2 if r == c else 0 for c in range(n)] for r in range(n)]
        for i, j, p, q in edges:
            m[i - 1][j - 1] = -p
            m[j - 1][i - 1] = -q
        return cls.from_entries(m)

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def nodes(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def edges(self) -> frozenset[frozenset[int]]:
        return frozenset(
            frozenset((i, j))
            for i in self.nodes for j in self.nodes
            if i < j and self.matrix(i, j) != 0
        )

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        # 0-based adjacency, used by the integer fast path
        rows = self.matrix.entries
        return tuple(
            tuple(j for j in range(self.n) if j != i and rows[i][j] != 0)
            for i in range(self.n)
        )

    @cached_property
    def connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            for j in self.neighbors[stack.pop()]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == self.n

    def edge_list(self) -> list[tuple[int, int, int, int]]:
        """Edges as (i, j, p, q) with i < j, p = -M_ij, q = -M_ji."""
        return [
            (i, j, -self.matrix(i, j), -self.matrix(j, i))
            for i in self.nodes for j in self.nodes
            if i < j and self.matrix(i, j) != 0
        ]

    def __repr__(self) -> str:
        return f"GcmGraph({self.matrix.as_lists()})"


# POSITIONS
# ---------

def to_fraction(x: Number) -> Fraction:
    if isinstance(x, float):
        raise TypeError("positions are exact; pass int, Fraction or 'p/q' strings")
    return Fraction(x)


@dataclass(frozen=True)
class Position:
    values: tuple[Fraction, ...]

    def __init__(self, values: Iterable[Number]):
        object.__setattr__(self, "values", tuple(to_fraction(v) for v in values))

    @classmethod
    def parse(cls, text: str) -> "Position":
        """'2,3' or '1/2,0,-3'."""
        return cls(part.strip() for part in text.split(","))

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.values)

    def node(self, i: int) -> Fraction:
        return self.values[i - 1]

    def scaled(self, r: Number) -> "Position":
        r = to_fraction(r)
        return Position(r * v for v in self.values)

    @property
    def dominant(self) -> bool:
        return all(v >= 0 for v in self.values)

    @property
    def strongly_dominant(self) -> bool:
        return all(v > 0 for v in self.values)

    @property
    def nonzero(self) -> bool:
        return any(v != 0 for v in self.values)

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.values)


def fundamental_position(graph: GcmGraph, i: int) -> Position:
    _check_node(graph, i)
    return Position(1 if j == i else 0 for j in graph.nodes)


@dataclass(frozen=True)
class FiringSequence:
    nodes: tuple[int, ...] = ()

    def __init__(self, nodes: Iterable[int] = ()):
        object.__setattr__(self, "nodes", tuple(int(i) for i in nodes))

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self) -> Iterator[int]:
        return iter(self.nodes)

    def __add__(self, other: "FiringSequence") -> "FiringSequence":
        return FiringSequence(self.nodes + tuple(other))

    def __mul__(self, m: int) -> "FiringSequence":
        return FiringSequence(self.nodes * m)


def _check_node(graph: GcmGraph, i: int) -> None:
    if not 1 <= i <= graph.n:
        raise IndexError(f"node {i} out of range 1..{graph.n}")


def _check_length(graph: GcmGraph, position: Position) -> None:
    if len(position) != graph.n:
        raise ValueError(f"position has {len(position)} entries, graph has {graph.n} nodes")


# FIRING
# ------

def fire(graph: GcmGraph, position: Position, i: int) -> Position:
    _check_length(graph, position)
    _check_node(graph, i)
    li = position.node(i)
    if li <= 0:
        raise IllegalFiring(i, li)
    row = graph.matrix.entries[i - 1]
    return Position(v - row[j] * li for j, v in enumerate(position.values))


def firing_map(graph: GcmGraph, i: int) -> list[list[Fraction]]:
    """Matrix F with (F @ lam)_j = lam_j - M_ij lam_i; rows indexed by j."""
    _check_node(graph, i)
    n = graph.n
    f = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    for j in range(n):
        f[j][i - 1] -= graph.matrix.entries[i - 1][j]
    return f


def legal_moves(graph: GcmGraph, position: Position) -> list[int]:
    _check_length(graph, position)
    return [i for i, v in enumerate(position.values, start=1) if v > 0]


# OUTCOMES AND TRACES
# -------------------

@dataclass(frozen=True)
class Converged:
    terminal: Position
    steps: int
    kind = "converged"


@dataclass(frozen=True)
class BudgetExhausted:
    steps: int
    kind = "exhausted"


@dataclass(frozen=True)
class Partial:
    """play_sequence finished legally but some node is still positive."""
    steps: int
    kind = "partial"


@dataclass(frozen=True)
class CertifiedDivergent:
    certificate: object
    kind = "divergent"


GameOutcome = Union[Converged, BudgetExhausted, Partial, CertifiedDivergent]


@dataclass(frozen=True)
class GameTrace:
    """A played game.

    Only the fired nodes are stored; intermediate positions are replayed on
    demand so that long budgeted games stay cheap.
    """
    graph: GcmGraph
    initial: Position
    fired: tuple[int, ...]
    final: Position
    outcome: GameOutcome

    @cached_property
    def steps(self) -> tuple[tuple[int, Position], ...]:
        out = []
        pos = self.initial
        for i in self.fired:
            pos = fire(self.graph, pos, i)
            out.append((i, pos))
        return tuple(out)

    @property
    def positions(self) -> list[Position]:
        return [self.initial] + [p for _, p in self.steps]

    def __len__(self) -> int:
        return len(self.fired)


class _IntState:
    """lam = z / d with z an integer vector; firing never changes d."""

    __slots__ = ("rows", "nbrs", "z", "d")

    def __init__(self, graph: GcmGraph, position: Position):
        self.rows = graph.matrix.entries
        self.nbrs = graph.neighbors
        self.d = lcm(*(v.denominator for v in position.values)) if len(position) else 1
        self.z = [int(v * self.d) for v in position.values]

    def fire0(self, i: int) -> None:
        z = self.z
        zi = z[i]
        row = self.rows[i]
        for j in self.nbrs[i]:
            z[j] -= row[j] * zi
        z[i] = -zi

    def position(self) -> Position:
        return Position(Fraction(v, self.d) for v in self.z)


def play_sequence(graph: GcmGraph, position: Position, seq: Iterable[int]) -> GameTrace:
    _check_length(graph, position)
    state = _IntState(graph, position)
    fired: list[int] = []
    for step, i in enumerate(seq, start=1):
        _check_node(graph, i)
        if state.z[i - 1] <= 0:
            partial = state.position()
            trace = GameTrace(graph, position, tuple(fired), partial, Partial(len(fired)))
            raise IllegalFiringAt(step, i, trace)
        state.fire0(i - 1)
        fired.append(i)
    final = state.position()
    if any(v > 0 for v in state.z):
        outcome: GameOutcome = Partial(len(fired))
    else:
        outcome = Converged(final, len(fired))
    return GameTrace(graph, position, tuple(fired), final, outcome)


# STRATEGIES
# ----------

@dataclass(frozen=True)
class GreedyMin:
    name = "greedy-min"


@dataclass(frozen=True)
class GreedyMax:
    name = "greedy-max"


@dataclass(frozen=True)
class RandomSeeded:
    seed: int = 0
    name = "random"


@dataclass(frozen=True)
class Prescribed:
    """Play ``seq`` first, then continue with GreedyMin."""
    seq: tuple[int, ...] = field(default=())
    name = "prescribed"


Strategy = Union[GreedyMin, GreedyMax, RandomSeeded, Prescribed]


def run_game(graph: GcmGraph, position: Position, strategy: Strategy = GreedyMin(),
             budget: int = 10_000) -> GameTrace:
    """Fire legal nodes chosen by ``strategy`` until none is positive or ``budget`` firings are done.

    Exhausting the budget is an outcome, not a claim of divergence.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    _check_length(graph, position)
    fired: list[int] = []
    state = _IntState(graph, position)
    if isinstance(strategy, Prescribed):
        fired.extend(play_sequence(graph, position, strategy.seq[:budget]).fired)
        for i in fired:
            state.fire0(i - 1)
    n = graph.n
    z = state.z
    order = range(n - 1, -1, -1) if isinstance(strategy, GreedyMax) else range(n)
    rng = random.Random(strategy.seed) if isinstance(strategy, RandomSeeded) else None

    while len(fired) < budget:
        if rng is None:
            for i in order:
                if z[i] > 0:
                    break
            else:
                break
        else:
            moves = [i for i in range(n) if z[i] > 0]
            if not moves:
                break
            i = rng.choice(moves)
        state.fire0(i)
        fired.append(i + 1)
    final = state.position()
    if any(v > 0 for v in z):
        outcome: GameOutcome = BudgetExhausted(len(fired))
    else:
        outcome = Converged(final, len(fired))
    return GameTrace(graph, position, tuple(fired), final, outcome)
