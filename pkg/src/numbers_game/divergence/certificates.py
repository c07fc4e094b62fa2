"""Certificate data types and their verifiers.

Two proof styles are supported:

* parametric loops: a position family ``u + k v`` that a fixed cycle maps to
  ``u + (k+1) v``.  Legality is checked on affine forms in ``k``.
* invariant regions: a polyhedral region closed under a fixed cycle.  Every
  fired value and every closure inequality carries a Farkas witness.

Both verifiers work on exact rationals and raise on the first failure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from ..core import (FiringSequence, GcmGraph, IllegalFiringAt, Position,
                    play_sequence, to_fraction)
from . import farkas


class CertificateError(ValueError):
    """Base class for failed verification."""


class PrefixIllegal(CertificateError):
    def __init__(self, step: int, node: int):
        self.step, self.node = step, node
        super().__init__(f"prefix firing {step} (node {node}) is illegal")


class LoopIllegal(CertificateError):
    def __init__(self, step: int, alpha: Fraction, beta: Fraction):
        self.step, self.alpha, self.beta = step, alpha, beta
        super().__init__(f"cycle firing {step} fires value {alpha}*k + {beta}, "
                         "not positive for every k >= 0")


class FamilyMismatch(CertificateError):
    def __init__(self, coordinate: int, expected, got):
        self.coordinate, self.expected, self.got = coordinate, expected, got
        super().__init__(f"coordinate {coordinate}: expected {expected}, got {got}")


class RegionMiss(CertificateError):
    def __init__(self, constraint: int, value: Fraction):
        self.constraint, self.value = constraint, value
        super().__init__(f"landing position violates region constraint {constraint} (value {value})")


class WitnessMismatch(CertificateError):
    def __init__(self, where: str, expected, got, reason: str = ""):
        self.where, self.expected, self.got, self.reason = where, expected, got, reason
        msg = f"{where}: witness gives {got}, target is {expected}"
        super().__init__(msg + (f" ({reason})" if reason else ""))


class NonStrictWitness(CertificateError):
    def __init__(self, where: str):
        self.where = where
        super().__init__(f"{where}: witness has no weight on a strict constraint")


def _fracs(values) -> tuple[Fraction, ...]:
    return tuple(to_fraction(v) for v in values)


# PARAMETRIC LOOPS
# ----------------

@dataclass(frozen=True)
class ParametricPosition:
    """The position family ``intercept + k * slope`` for integers k >= 0."""
    intercept: tuple[Fraction, ...]
    slope: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "intercept", _fracs(self.intercept))
        object.__setattr__(self, "slope", _fracs(self.slope))
        if len(self.intercept) != len(self.slope):
            raise ValueError("intercept and slope lengths differ")

    @classmethod
    def of(cls, *pairs) -> "ParametricPosition":
        """Build from ``(slope, intercept)`` pairs, one per node."""
        return cls(tuple(b for _, b in pairs), tuple(a for a, _ in pairs))

    def at(self, k: int) -> Position:
        return Position(u + k * v for u, v in zip(self.intercept, self.slope))

    def __len__(self) -> int:
        return len(self.intercept)

    def __str__(self) -> str:
        def term(a, b):
            if a == 0:
                return str(b)
            head = "k" if a == 1 else ("-k" if a == -1 else f"{a}k")
            if b == 0:
                return head
            return f"{head}{'+' if b > 0 else '-'}{abs(b)}"
        return "(" + ",".join(term(a, b) for b, a in zip(self.intercept, self.slope)) + ")"


@dataclass(frozen=True)
class ParametricLoopCertificate:
    family_id: str
    omega: int
    start: Position
    prefix: FiringSequence
    family: ParametricPosition
    cycle: FiringSequence
    repeats: int = 1

    kind = "parametric"


@dataclass(frozen=True)
class LoopStep:
    node: int
    alpha: Fraction
    beta: Fraction


@dataclass(frozen=True)
class ParametricReport:
    certificate: ParametricLoopCertificate
    steps: tuple[LoopStep, ...]
    verified: bool = True


def verify_parametric(graph: GcmGraph, cert: ParametricLoopCertificate) -> ParametricReport:
    n = graph.n
    if len(cert.start) != n or len(cert.family) != n:
        raise ValueError("certificate dimension does not match graph")
    try:
        trace = play_sequence(graph, cert.start, cert.prefix)
    except IllegalFiringAt as exc:
        raise PrefixIllegal(exc.step, exc.node) from None
    base = cert.family.at(0)
    for j in range(n):
        if trace.final.values[j] != base.values[j]:
            raise FamilyMismatch(j + 1, base.values[j], trace.final.values[j])

    rows = graph.matrix.entries
    beta = list(cert.family.intercept)
    alpha = list(cert.family.slope)
    steps = []
    nodes = list(cert.cycle) * cert.repeats
    for step, i in enumerate(nodes, start=1):
        a, b = alpha[i - 1], beta[i - 1]
        if not (a >= 0 and b > 0):
            raise LoopIllegal(step, a, b)
        steps.append(LoopStep(i, a, b))
        row = rows[i - 1]
        for j in range(n):
            if row[j]:
                beta[j] -= row[j] * b
                alpha[j] -= row[j] * a

    u, v = cert.family.intercept, cert.family.slope
    for j in range(n):
        want = (u[j] + v[j], v[j])
        got = (beta[j], alpha[j])
        if got != want:
            raise FamilyMismatch(j + 1, f"{want[1]}k+{want[0]}", f"{got[1]}k+{got[0]}")
    return ParametricReport(cert, tuple(steps))


# INVARIANT REGIONS
# -----------------

@dataclass(frozen=True)
class Constraint:
    """``coeffs . x >= 0``, or ``> 0`` when strict."""
    coeffs: tuple[Fraction, ...]
    strict: bool

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _fracs(self.coeffs))

    def value(self, position: Position) -> Fraction:
        return sum((c * x for c, x in zip(self.coeffs, position.values)), Fraction(0))

    def holds(self, position: Position) -> bool:
        v = self.value(position)
        return v > 0 if self.strict else v >= 0


Witness = dict[int, Fraction]


@dataclass(frozen=True)
class InvariantRegionCertificate:
    """A region, a cycle mapping it into itself, and the witnesses proving so.

    ``step_witnesses[s]`` proves the value fired at cycle step s is positive.
    ``closure_witnesses[r]`` proves region constraint r holds after the cycle.
    ``output``, when given, is the expected position after one cycle as linear
    forms in the starting coordinates; it is compared exactly.
    """
    family_id: str
    omega: int
    region: tuple[Constraint, ...]
    start: Position
    prefix: FiringSequence
    cycle: FiringSequence
    step_witnesses: tuple[Witness, ...] = field(default=())
    closure_witnesses: tuple[Witness, ...] = field(default=())
    output: Optional[tuple[tuple[Fraction, ...], ...]] = None

    def __post_init__(self):
        if self.output is not None:
            object.__setattr__(self, "output", tuple(_fracs(f) for f in self.output))

    kind = "region"


@dataclass(frozen=True)
class RegionReport:
    certificate: InvariantRegionCertificate
    landing: Position
    fired_forms: tuple[tuple[Fraction, ...], ...]
    output_forms: tuple[tuple[Fraction, ...], ...]
    verified: bool = True


def symbolic_cycle(graph: GcmGraph, cycle: Sequence[int]):
    """Push the generic position x through ``cycle`` without legality checks.

    Returns (fired forms, output forms); each form is a coefficient vector
    over the original coordinates.
    """
    n = graph.n
    rows = graph.matrix.entries
    forms = [[Fraction(int(j == c)) for c in range(n)] for j in range(n)]
    fired = []
    for i in cycle:
        fi = list(forms[i - 1])
        fired.append(tuple(fi))
        row = rows[i - 1]
        for j in range(n):
            if row[j]:
                forms[j] = [x - row[j] * y for x, y in zip(forms[j], fi)]
    return tuple(fired), tuple(tuple(f) for f in forms)


def pull_back(constraint: Constraint, output_forms) -> tuple[Fraction, ...]:
    """The constraint's linear form evaluated at the cycle's output."""
    n = len(output_forms)
    out = [Fraction(0)] * n
    for j, c in enumerate(constraint.coeffs):
        if c:
            for col in range(n):
                out[col] += c * output_forms[j][col]
    return tuple(out)


def generate_witnesses(graph: GcmGraph, region: Sequence[Constraint], cycle: Sequence[int]):
    """Find step and closure witnesses, or None where the search fails."""
    forms = [c.coeffs for c in region]
    strict = [c.strict for c in region]
    fired, output = symbolic_cycle(graph, cycle)
    steps = tuple(farkas.find_witness(forms, strict, f, True) for f in fired)
    closure = tuple(farkas.find_witness(forms, strict, pull_back(c, output), c.strict)
                    for c in region)
    return steps, closure


def _check(forms, strict, target, weights: Optional[Witness], need_strict: bool, where: str):
    if weights is None:
        raise WitnessMismatch(where, target, None, "missing witness")
    ok, reason = farkas.check_witness(forms, strict, target, weights, need_strict)
    if ok:
        return
    if reason == "no weight on a strict constraint":
        raise NonStrictWitness(where)
    got = farkas.combine(forms, weights) if weights else tuple(Fraction(0) for _ in target)
    raise WitnessMismatch(where, target, got, reason)


def verify_invariant_region(graph: GcmGraph, cert: InvariantRegionCertificate) -> RegionReport:
    n = graph.n
    if len(cert.start) != n or any(len(c.coeffs) != n for c in cert.region):
        raise ValueError("certificate dimension does not match graph")
    try:
        landing = play_sequence(graph, cert.start, cert.prefix).final
    except IllegalFiringAt as exc:
        raise PrefixIllegal(exc.step, exc.node) from None
    for r, c in enumerate(cert.region, start=1):
        if not c.holds(landing):
            raise RegionMiss(r, c.value(landing))

    forms = [c.coeffs for c in cert.region]
    strict = [c.strict for c in cert.region]
    fired, output = symbolic_cycle(graph, cert.cycle)
    if cert.output is not None:
        for j, (want, got) in enumerate(zip(cert.output, output), start=1):
            if want != got:
                raise WitnessMismatch(f"output {j}", want, got, "cycle output differs from the stated form")
    if len(cert.step_witnesses) != len(fired):
        raise WitnessMismatch("cycle", len(fired), len(cert.step_witnesses), "wrong number of step witnesses")
    if len(cert.closure_witnesses) != len(cert.region):
        raise WitnessMismatch("closure", len(cert.region), len(cert.closure_witnesses),
                              "wrong number of closure witnesses")
    for s, (target, w) in enumerate(zip(fired, cert.step_witnesses), start=1):
        _check(forms, strict, target, w, True, f"step {s}")
    for r, (c, w) in enumerate(zip(cert.region, cert.closure_witnesses), start=1):
        _check(forms, strict, pull_back(c, output), w, c.strict, f"constraint {r}")
    return RegionReport(cert, landing, fired, output)
