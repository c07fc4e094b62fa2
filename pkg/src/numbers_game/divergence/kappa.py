"""Sampled closure proofs for the three parametric triangle families.

Nodes are numbered a = 1 (top right), b = 2 (bottom right), c = 3 (left).
A position meets the closure condition when a >= 0, b >= 0, c <= 0 and
kappa > 0, where kappa is a variant-specific linear form.  One round fires
the two right nodes until neither is positive and then fires c once.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..catalog import BadParameters
from ..core import FiringSequence, GcmGraph, IllegalFiringAt, Position, play_sequence
from .certificates import PrefixIllegal

ROUND_BOUND = 1000

_MIN_PRODUCT = {"Tri1": 1, "Tri2": 2, "Tri3": 3}


class NonpositiveQ(ValueError):
    pass


class RoundBound(ValueError):
    def __init__(self, start: Position):
        self.start = start
        super().__init__(f"right-node firing from {start} exceeded {ROUND_BOUND} steps")


class ClosedFormMismatch(ValueError):
    def __init__(self, start: Position, expected: Position, got: Position):
        self.start, self.expected, self.got = start, expected, got
        super().__init__(f"round from {start} ended at {got}, closed form gives {expected}")


class RegionEscape(ValueError):
    def __init__(self, position: Position, reason: str):
        self.position, self.reason = position, reason
        super().__init__(f"{position} leaves the closure region: {reason}")


@dataclass(frozen=True)
class KappaCertificate:
    variant: str
    p1: int
    q1: int
    p2: int
    q2: int
    kappa_coeffs: tuple[Fraction, Fraction, Fraction]
    Q: Fraction
    Q1: Fraction
    Q2: Fraction
    sign_terms: tuple[tuple[str, Fraction], ...] = ()

    def kappa(self, position: Position) -> Fraction:
        return sum((c * x for c, x in zip(self.kappa_coeffs, position.values)), Fraction(0))

    def meets_condition(self, position: Position) -> Optional[str]:
        """None when the position is in the closure region, else the failed clause."""
        a, b, c = position.values
        if a < 0:
            return "a < 0"
        if b < 0:
            return "b < 0"
        if c > 0:
            return "c > 0"
        if self.kappa(position) <= 0:
            return "kappa <= 0"
        return None

    def closed_form(self, position: Position) -> Position:
        """Closed-form output of one round for this variant."""
        a, b, _ = position.values
        k = self.kappa(position)
        q1, q2 = Fraction(self.q1), Fraction(self.q2)
        if self.variant == "Tri1":
            return Position((q1 * (k + a / q2), q2 * (k + b / q1), -k - a / q2 - b / q1))
        return Position((q1 * (k + b / q2), q2 * (k + a / q1), -k - a / q1 - b / q2))


def build_kappa_certificate(variant: str, p1: int, q1: int, p2: int, q2: int) -> KappaCertificate:
    if variant not in _MIN_PRODUCT:
        raise BadParameters(f"unknown triangle variant {variant!r}")
    params = (p1, q1, p2, q2)
    if any(not isinstance(x, int) or isinstance(x, bool) or x < 1 for x in params):
        raise BadParameters(f"amplitudes must be positive integers, got {params}")
    least = _MIN_PRODUCT[variant]
    if p1 * q1 < least or p2 * q2 < least:
        raise BadParameters(f"{variant} needs p1*q1 and p2*q2 at least {least}")

    P1, Q1_, P2, Q2_ = (Fraction(x) for x in params)
    if variant == "Tri1":
        kappa = (P1 + P2 - 1 / Q2_, P1 + P2 - 1 / Q1_, Fraction(1))
        q_terms = [("q1(p2-1/q2)", Q1_ * (P2 - 1 / Q2_)), ("q2(p1-1/q1)", Q2_ * (P1 - 1 / Q1_)),
                   ("p1q1+p2q2-1", P1 * Q1_ + P2 * Q2_ - 1)]
        q1_inner = [("q1(p2-1/q2)", Q1_ * (P2 - 1 / Q2_)), ("p1q1-1", P1 * Q1_ - 1)]
        q2_inner = [("q2(p1-1/q1)", Q2_ * (P1 - 1 / Q1_)), ("p2q2-1", P2 * Q2_ - 1)]
        q1_scale, q2_scale = 1 / Q2_, 1 / Q1_
    else:
        # the third triangle doubles the a-b weights of the second
        x, y, z, w = (2, 2, 1, 2) if variant == "Tri2" else (4, 6, 2, 4)
        kappa = (x * P1 + y * P2 - 1 / Q1_, z * P1 + w * P2 - 1 / Q2_, Fraction(1))
        q_terms = [(f"q1({y}p2-1/q1)", Q1_ * (y * P2 - 1 / Q1_)),
                   (f"q2({z}p1-1/q2)", Q2_ * (z * P1 - 1 / Q2_)),
                   (f"{x}p1q1+{w}p2q2-1", x * P1 * Q1_ + w * P2 * Q2_ - 1)]
        q1_inner = [(f"q2({z}p1-1/q2)", Q2_ * (z * P1 - 1 / Q2_)), (f"{w}p2q2-1", w * P2 * Q2_ - 1)]
        q2_inner = [(f"q1({y}p2-1/q1)", Q1_ * (y * P2 - 1 / Q1_)), (f"{x}p1q1-1", x * P1 * Q1_ - 1)]
        q1_scale, q2_scale = 1 / Q1_, 1 / Q2_

    terms = q_terms + q1_inner + q2_inner
    for name, value in terms:
        if value < 0:
            raise NonpositiveQ(f"{variant}{params}: term {name} = {value} is negative")
    Q = sum((v for _, v in q_terms), Fraction(0))
    Q1 = q1_scale * sum((v for _, v in q1_inner), Fraction(0))
    Q2 = q2_scale * sum((v for _, v in q2_inner), Fraction(0))
    if q_terms[-1][1] <= 0 or Q <= 0:
        raise NonpositiveQ(f"{variant}{params}: Q = {Q}")
    return KappaCertificate(variant, p1, q1, p2, q2, kappa, Q, Q1, Q2, tuple(terms))


# VERIFICATION
# ------------

def play_round(graph: GcmGraph, position: Position) -> tuple[Position, int]:
    """One round: fire a or b (lower index first) until neither is positive, then c."""
    rows = graph.matrix.entries
    vals = list(position.values)
    fired = 0
    while vals[0] > 0 or vals[1] > 0:
        if fired >= ROUND_BOUND:
            raise RoundBound(position)
        i = 0 if vals[0] > 0 else 1
        x = vals[i]
        for j in range(3):
            vals[j] -= rows[i][j] * x
        fired += 1
    if vals[2] <= 0:
        raise RegionEscape(Position(vals), "left node not positive at end of round")
    x = vals[2]
    for j in range(3):
        vals[j] -= rows[2][j] * x
    return Position(vals), fired + 1


def symbolic_identity(graph: GcmGraph, cert: KappaCertificate) -> bool:
    """Check kappa(closed form) == Q kappa + Q1 a + Q2 b as linear forms."""
    basis = [Position(int(i == j) for j in range(3)) for i in range(3)]
    outs = [cert.closed_form(e) for e in basis]
    # columns of the closed form are linear in (a, b, c)
    lhs = [cert.kappa(o) for o in outs]
    rhs = [cert.Q * cert.kappa_coeffs[i] + (cert.Q1 if i == 0 else 0) + (cert.Q2 if i == 1 else 0)
           for i in range(3)]
    return lhs == rhs


def _sample(rng: random.Random, cert: KappaCertificate) -> Position:
    while True:
        a = Fraction(rng.randint(0, 12), rng.randint(1, 6))
        b = Fraction(rng.randint(0, 12), rng.randint(1, 6))
        room = cert.kappa_coeffs[0] * a + cert.kappa_coeffs[1] * b
        if room > 0:
            break
    c = -room * Fraction(rng.randint(0, 11), 12)
    return Position((a, b, c))


def check_round(graph: GcmGraph, cert: KappaCertificate, position: Position) -> Position:
    """Play one round from a position in the region and check every claim about it."""
    got, _ = play_round(graph, position)
    want = cert.closed_form(position)
    if got != want:
        raise ClosedFormMismatch(position, want, got)
    reason = cert.meets_condition(got)
    if reason:
        raise RegionEscape(got, reason)
    a, b, _ = position.values
    if cert.kappa(got) != cert.Q * cert.kappa(position) + cert.Q1 * a + cert.Q2 * b:
        raise ClosedFormMismatch(position, "kappa identity", cert.kappa(got))
    return got


@dataclass(frozen=True)
class KappaReport:
    certificate: KappaCertificate
    samples: int
    total_firings: int
    verified: bool = True


def verify_kappa(graph: GcmGraph, cert: KappaCertificate, samples: int = 100, seed: int = 0) -> KappaReport:
    if graph.n != 3:
        raise ValueError("kappa certificates apply to three-node graphs")
    if not symbolic_identity(graph, cert):
        raise ClosedFormMismatch(None, "kappa identity", "symbolic forms disagree")
    rng = random.Random(seed)
    total = 0
    for _ in range(samples):
        start = _sample(rng, cert)
        if cert.meets_condition(start):
            continue
        check_round(graph, cert, start)
        total += play_round(graph, start)[1]
    return KappaReport(cert, samples, total)


@dataclass(frozen=True)
class TriangleCertificate:
    family_id: str
    omega: int
    kappa: KappaCertificate
    start: Position
    prefix: FiringSequence

    kind = "kappa"


@dataclass(frozen=True)
class TriangleReport:
    certificate: TriangleCertificate
    landing: Position
    rounds: tuple[Position, ...]
    verified: bool = True


def verify_triangle(graph: GcmGraph, cert: TriangleCertificate, rounds: int = 4) -> TriangleReport:
    """Replay the prefix, confirm the landing is in the region, then follow a few rounds.

    The sampled proof of closure lives in :func:`verify_kappa`, which callers
    run once per parameter tuple.
    """
    try:
        landing = play_sequence(graph, cert.start, cert.prefix).final
    except IllegalFiringAt as exc:
        raise PrefixIllegal(exc.step, exc.node) from None
    reason = cert.kappa.meets_condition(landing)
    if reason:
        raise RegionEscape(landing, reason)
    seen = [landing]
    for _ in range(rounds):
        seen.append(check_round(graph, cert.kappa, seen[-1]))
    return TriangleReport(cert, landing, tuple(seen))
