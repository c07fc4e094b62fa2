"""The ten acceptance criteria, checked exactly.

Each ``check_*`` function raises AssertionError on the first discrepancy.
Under pytest a PASS/FAIL line per criterion is printed in the terminal
summary (see conftest.py); run this file directly for the same lines
without pytest.
"""

import io
import json
import random
import sys
from fractions import Fraction

import pytest

from numbers_game.catalog import (DynkinType, InadmissibleFamilyId, build_finite, build_inadmissible,
                                  finite_types, minimal_instances, triangle_grid)
from numbers_game.cli import main, parse_graph, print_graph, replay_trace
from numbers_game.core import (GreedyMax, GreedyMin, Position, RandomSeeded, fire,
                               fundamental_position, play_sequence, run_game)
from numbers_game.divergence import build_kappa_certificate, verify_all
from numbers_game.strategies import exceptional_sequence, lemma22_sequence

from _support import CRITERION7_IDS, dominant, strongly_dominant

F = Fraction


# 1. B2 game tree
# ---------------

def check_b2_tree():
    g = build_finite(DynkinType("B", 2))
    a, b = F(2), F(3)
    # the two branches of the tree, evaluated at a = 2, b = 3
    left = [(-a, a + b), (a + 2 * b, -a - b), (-a - 2 * b, b), (-a, -b)]
    right = [(a + 2 * b, -b), (-a - 2 * b, a + b), (a, -a - b), (-a, -b)]
    for first, expected in ((1, left), (2, right)):
        pos = Position((a, b))
        seen = []
        node = first
        while True:
            pos = fire(g, pos, node)
            seen.append(pos.values)
            moves = [i for i in g.nodes if pos.node(i) > 0]
            if not moves:
                break
            assert len(moves) == 1, "each B2 branch is forced after the first firing"
            node = moves[0]
        assert seen == expected, (first, seen)
    for strategy in (GreedyMin(), GreedyMax()):
        trace = run_game(g, Position((2, 3)), strategy)
        assert (len(trace), trace.final) == (4, Position((-2, -3)))


# 2. lengths of every game sequence
# ---------------------------------

LENGTHS = {"E6": 36, "E7": 63, "E8": 120, "F4": 24, "G2": 6}


def expected_steps(t: DynkinType) -> int:
    n = t.n
    if t.family == "A":
        return n * (n + 1) // 2
    if t.family in "BC":
        return n * n
    if t.family == "D":
        return n * (n - 1)
    return LENGTHS[str(t)]


def check_lengths():
    rng = random.Random(2)
    types = finite_types(10)
    assert {str(t) for t in types} >= set(LENGTHS) | {"A10", "B10", "C10", "D10"}
    for t in types:
        g = build_finite(t)
        for _ in range(25):
            trace = run_game(g, Position(strongly_dominant(rng, t.n)), GreedyMin())
            assert trace.outcome.kind == "converged", t
            assert len(trace) == expected_steps(t), (str(t), len(trace))


# 3. terminals of the A-D sequences
# ---------------------------------

def expected_terminal(t: DynkinType, a):
    neg = [-x for x in a]
    if t.family == "A":
        return tuple(reversed(neg))
    if t.family == "D" and t.n % 2:
        neg[-2], neg[-1] = neg[-1], neg[-2]
    return tuple(neg)


def check_classical_terminals():
    rng = random.Random(3)
    for t in finite_types(10):
        if t.family not in "ABCD":
            continue
        g = build_finite(t)
        plan = lemma22_sequence(t)
        assert len(plan.sequence) == expected_steps(t)
        for _ in range(10):
            a = strongly_dominant(rng, t.n)
            trace = play_sequence(g, Position(a), plan.sequence)
            assert trace.outcome.kind == "converged", str(t)
            assert trace.final.values == expected_terminal(t, a), str(t)
            greedy = run_game(g, Position(a), GreedyMin())
            assert greedy.final == trace.final, str(t)


# 4. exceptional terminals
# ------------------------

def check_exceptional_terminals():
    rng = random.Random(4)
    for label in ("G2", "F4", "E6", "E7", "E8"):
        t = DynkinType.parse(label)
        g = build_finite(t)
        plan = exceptional_sequence(t)
        for _ in range(10):
            a = strongly_dominant(rng, t.n)
            trace = play_sequence(g, Position(a), plan.sequence)
            assert trace.outcome.kind == "converged", label
            if label == "E6":
                a_, b, c, d, e, f = a
                want = (-f, -b, -e, -d, -c, -a_)
            else:
                want = tuple(-x for x in a)
            assert trace.final.values == want, label


# 5. strong convergence
# ---------------------

def check_strong_convergence():
    rng = random.Random(5)
    for t in finite_types(8):
        g = build_finite(t)
        strategies = [GreedyMin(), GreedyMax()] + [RandomSeeded(s) for s in range(20)]
        for _ in range(10):
            pos = Position(dominant(rng, t.n))
            results = set()
            for s in strategies:
                trace = run_game(g, pos, s)
                assert trace.outcome.kind == "converged", (str(t), s)
                results.add((len(trace), trace.final))
            assert len(results) == 1, (str(t), pos, results)


# 6. comparison
# -------------

def check_comparison():
    rng = random.Random(6)
    types = finite_types(8)
    pairs = 0
    while pairs < 200:
        t = rng.choice(types)
        g = build_finite(t)
        lam = tuple(F(rng.randint(-6, 9), rng.randint(1, 3)) for _ in range(t.n))
        if run_game(g, Position(lam), GreedyMin()).outcome.kind != "converged":
            continue
        lower = tuple(x - F(rng.randint(0, 6), rng.randint(1, 3)) for x in lam)
        assert all(y <= x for x, y in zip(lam, lower))
        assert run_game(g, Position(lower), GreedyMin()).outcome.kind == "converged", (str(t), lam, lower)
        pairs += 1


# 7. full certificate verification
# --------------------------------

def check_divergence_certificates():
    assert len([i for i in CRITERION7_IDS if i.startswith("Tri")]) == 181
    for fid in CRITERION7_IDS:
        report = verify_all(fid)
        n = build_inadmissible(fid).n
        assert sorted(v.omega for v in report.verdicts) == list(range(1, n + 1)), fid
        assert report.passed, (fid, [v.error for v in report.verdicts if not v.verified])


# 8. divergence exhausts every budget
# -----------------------------------

def check_exhaustion():
    minimal = minimal_instances()
    tags = {f.tag for f in minimal}
    assert tags == {InadmissibleFamilyId.parse(i).tag for i in CRITERION7_IDS}
    for fid in minimal:
        g = build_inadmissible(fid)
        report = verify_all(fid)
        assert report.passed, str(fid)
        strategies = [GreedyMin(), GreedyMax()] + [RandomSeeded(s) for s in range(5)]
        for v in report.verdicts:
            for s in strategies:
                trace = run_game(g, fundamental_position(g, v.omega), s, budget=10_000)
                assert trace.outcome.kind == "exhausted", (str(fid), v.omega, s)
                assert len(trace) == 10_000


# 9. kappa algebra
# ----------------

def kappa_weights(variant, p1, q1, p2, q2):
    p1, q1, p2, q2 = map(F, (p1, q1, p2, q2))
    if variant == "Tri1":
        return p1 + p2 - 1 / q2, p1 + p2 - 1 / q1
    if variant == "Tri2":
        return 2 * p1 + 2 * p2 - 1 / q1, p1 + 2 * p2 - 1 / q2
    return 4 * p1 + 6 * p2 - 1 / q1, 2 * p1 + 4 * p2 - 1 / q2


def q_values(variant, p1, q1, p2, q2):
    p1, q1, p2, q2 = map(F, (p1, q1, p2, q2))
    if variant == "Tri1":
        return (q1 * (p2 - 1 / q2) + q2 * (p1 - 1 / q1) + (p1 * q1 + p2 * q2 - 1),
                (q1 * (p2 - 1 / q2) + (p1 * q1 - 1)) / q2,
                (q2 * (p1 - 1 / q1) + (p2 * q2 - 1)) / q1)
    x, y, z, w = (2, 2, 1, 2) if variant == "Tri2" else (4, 6, 2, 4)
    return (q1 * (y * p2 - 1 / q1) + q2 * (z * p1 - 1 / q2) + (x * p1 * q1 + w * p2 * q2 - 1),
            (q2 * (z * p1 - 1 / q2) + (w * p2 * q2 - 1)) / q1,
            (q1 * (y * p2 - 1 / q1) + (x * p1 * q1 - 1)) / q2)


def round_by_hand(g, pos):
    # right nodes highest index first, then the left node
    while pos.node(1) > 0 or pos.node(2) > 0:
        pos = fire(g, pos, 2 if pos.node(2) > 0 else 1)
    return fire(g, pos, 3)


def check_kappa_algebra():
    rng = random.Random(9)
    count = 0
    for variant in ("Tri1", "Tri2", "Tri3"):
        for fid in triangle_grid(variant):
            p1, q1, p2, q2 = fid.params
            g = build_inadmissible(fid)
            cert = build_kappa_certificate(variant, p1, q1, p2, q2)
            Q, Q1, Q2 = q_values(variant, p1, q1, p2, q2)
            assert (cert.Q, cert.Q1, cert.Q2) == (Q, Q1, Q2), str(fid)
            assert Q > 0 and Q1 >= 0 and Q2 >= 0, str(fid)
            wa, wb = kappa_weights(variant, p1, q1, p2, q2)
            checked = 0
            while checked < 100:
                a = F(rng.randint(0, 9), rng.randint(1, 5))
                b = F(rng.randint(0, 9), rng.randint(1, 5))
                c = -F(rng.randint(0, 40), rng.randint(1, 5))
                kappa = wa * a + wb * b + c
                if kappa <= 0:
                    continue
                a1, b1, c1 = round_by_hand(g, Position((a, b, c))).values
                if variant == "Tri1":
                    want = (q1 * (kappa + a / q2), q2 * (kappa + b / q1), -kappa - a / q2 - b / q1)
                else:
                    want = (q1 * (kappa + b / q2), q2 * (kappa + a / q1), -kappa - a / q1 - b / q2)
                assert (a1, b1, c1) == want, (str(fid), (a, b, c))
                assert wa * a1 + wb * b1 + c1 == Q * kappa + Q1 * a + Q2 * b, (str(fid), (a, b, c))
                checked += 1
            count += 1
    assert count == 181


# 10. command line
# ----------------

def run_cli(*argv, stdin=""):
    out = io.StringIO()
    code = main(list(argv), io.StringIO(stdin), out)
    return code, out.getvalue()


def check_cli(tmp_path):
    code, text = run_cli("play", "--graph", "@B2", "--position", "2,3", "--strategy", "greedy-min")
    assert (code, text.strip()) == (0, "steps=4 terminal=-2,-3")
    code, text = run_cli("play", "--graph", "@Atilde:3", "--position", "1,0,0", "--budget", "50")
    assert (code, text.strip()) == (2, "steps=50 exhausted")
    code, text = run_cli("play", "--graph", "@A1", "--position", "0")
    assert code == 0 and text.startswith("steps=0")
    code, text = run_cli("verify", "--family", "Atilde:4", "--all")
    assert code == 0 and text.rstrip().endswith("4/4 certificates verified")
    code, text = run_cli("verify", "--family", "Gtilde1", "--omega", "2")
    assert code == 0 and "prefix (γ2,γ1,γ2,γ1,γ2)" in text and "landing (0,-1,4)" in text
    code, text = run_cli("verify", "--family", "A3", "--all")
    assert code == 1 and "not an inadmissible-catalog family" in text
    assert run_cli("classify", "--graph", "@B2") == (0, "finite-type B2\n")

    files = {"cycle": "gcm 1\nnodes 3\nedge 1 2 1 1\nedge 2 3 1 1\nedge 1 3 1 1\n",
             "a3r": "gcm 1\nnodes 3\nedge 3 2 1 1\nedge 2 1 1 1\n",
             "bad": "gcm 1\nnodes 2\nedge 1 2 1 0\n"}
    for name, text in files.items():
        (tmp_path / name).write_text(text)
    assert run_cli("classify", "--graph", str(tmp_path / "cycle")) == (0, "not finite type\n")
    assert run_cli("classify", "--graph", str(tmp_path / "a3r")) == (0, "finite-type A3 via σ=(3,2,1)\n")
    assert run_cli("play", "--graph", str(tmp_path / "bad"), "--position", "1,1")[0] == 1

    code, text = run_cli("repl", "--graph", "@B2", "--position", "1,1", stdin="2\n1\n2\n1\n")
    assert code == 0 and text.rstrip().endswith("terminal: -1,-1 (4 firings)")
    assert run_cli("repl", "--graph", "@B2", "--position", "1,1", stdin="quit\n")[0] == 0
    code, text = run_cli("repl", "--graph", "@B2", "--position", "1,1", stdin="5\nquit\n")
    assert code == 0 and "no such node" in text

    for graph, position, budget in (("@E6", "1/2,2,0,3,1,7/3", "10000"), ("@Atilde:4", "1,0,0,0", "300"),
                                    ("@Gtilde3", "0,1,0", "200")):
        path = tmp_path / "trace.json"
        code, _ = run_cli("play", "--graph", graph, "--position", position, "--budget", budget,
                          "--trace-out", str(path))
        data = json.loads(path.read_text())
        replayed = replay_trace(data)
        assert [str(p) for _, p in replayed.steps] == [",".join(s["position"]) for s in data["steps"]]
        assert code == (0 if data["outcome"]["kind"] == "converged" else 2)
        assert all("/1" not in x for s in data["steps"] for x in s["position"])

    graphs = [build_finite(t) for t in finite_types(10)]
    graphs += [build_inadmissible(fid) for fid in CRITERION7_IDS]
    for g in graphs:
        assert parse_graph(print_graph(g)) == g


# REGISTRY
# --------

CRITERIA = [
    (1, "B2 game tree from (2,3)", check_b2_tree),
    (2, "game lengths for every finite type", check_lengths),
    (3, "classical sequence terminals", check_classical_terminals),
    (4, "exceptional sequence terminals", check_exceptional_terminals),
    (5, "strong convergence on rank <= 8", check_strong_convergence),
    (6, "comparison on 200 pairs", check_comparison),
    (7, "every divergence certificate verifies", check_divergence_certificates),
    (8, "divergent games exhaust a 10^4 budget", check_exhaustion),
    (9, "kappa closed forms and identity", check_kappa_algebra),
    (10, "command-line contract", check_cli),
]


@pytest.mark.acceptance
@pytest.mark.parametrize("number,title,check", CRITERIA, ids=[f"criterion{n}" for n, _, _ in CRITERIA])
def test_criterion(number, title, check, tmp_path):
    if check is check_cli:
        check(tmp_path)
    else:
        check()


if __name__ == "__main__":
    import pathlib
    import tempfile

    failed = 0
    for number, title, check in CRITERIA:
        try:
            if check is check_cli:
                with tempfile.TemporaryDirectory() as d:
                    check(pathlib.Path(d))
            else:
                check()
            print(f"criterion {number:>2}: PASS  {title}")
        except AssertionError as exc:
            failed += 1
            print(f"criterion {number:>2}: FAIL  {title}  {exc}")
    sys.exit(1 if failed else 0)
