"""Acceptance criteria, one function each, every one under its runtime budget.

Each ``criterion_*`` returns a :class:`Outcome`; the tests assert on it and
the terminal summary prints one PASS/FAIL line per criterion. Run the file
directly (``python tests/test_acceptance.py``) for the same lines without
pytest.
"""

import itertools
import json
import math
import random
import time
from dataclasses import dataclass

import pytest

from critgroup import harness
from critgroup.closedform import closed_form_group, kmm_group
from critgroup.exactlin import (
    INFINITE,
    IntMatrix,
    canonicalize,
    critical_group,
    det,
    group_order,
    minor_gcd,
    snf,
)
from critgroup.graphs import cuv, family, reduced_laplacian
from critgroup.matforms import (
    KnElement,
    ParamMatrixSpec,
    build,
    claimed_diagonal,
    kn_add,
    kn_mul,
    kn_pow,
    kn_scale,
    phi,
    phi_reduced,
)
from critgroup.polyseq import f, f_closed, p, p_closed, split_rule

RESULTS: dict[int, "Outcome"] = {}


@dataclass
class Outcome:
    number: int
    title: str
    ok: bool
    detail: str
    seconds: float
    budget: float | None

    @property
    def passed(self) -> bool:
        return self.ok and (self.budget is None or self.seconds < self.budget)

    def line(self) -> str:
        budget = f" < {self.budget:g}s" if self.budget else ""
        status = "PASS" if self.passed else "FAIL"
        return f"criterion {self.number} {status}: {self.title} ({self.detail}; {self.seconds:.2f}s{budget})"


def _timed(number, title, budget):
    def deco(fn):
        def run() -> Outcome:
            start = time.perf_counter()
            ok, detail = fn()
            out = Outcome(number, title, ok, detail, time.perf_counter() - start, budget)
            RESULTS[number] = out
            return out
        run.__name__ = fn.__name__
        return run
    return deco


# ---------------------------------------------------------------------------


@_timed(1, "SNF agrees with minor gcds and determinants", 30)
def criterion_1():
    rng = random.Random(1)
    checked = bad = 0
    for _ in range(600):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        M = IntMatrix.from_rows([[rng.randint(-10, 10) for _ in range(c)] for _ in range(r)])
        d = snf(M).diagonal
        deltas = [minor_gcd(M, i) for i in range(len(d) + 1)]
        for i in range(1, len(d) + 1):
            if deltas[i - 1] and d[i - 1] != deltas[i] // deltas[i - 1]:
                bad += 1
        if r == c and abs(det(M)) != math.prod(d):
            bad += 1
        checked += 1
    return bad == 0, f"{checked} matrices, {bad} disagreements"


@_timed(2, "parametric matrices match their claimed diagonal forms", 120)
def criterion_2():
    checked = bad = 0
    for kind, lo in (("T", 2), ("P", 2), ("K", 2), ("C", 4)):
        for n in range(lo, 11):
            for a in range(-8, 9):
                for b in range(-8, 9):
                    spec = ParamMatrixSpec(kind, n, a, b)
                    if snf(build(spec)).diagonal != snf(claimed_diagonal(spec).matrix()).diagonal:
                        bad += 1
                    checked += 1
    return bad == 0, f"{checked} (kind, n, a, b) points, {bad} mismatches"


@_timed(3, "tridiagonal and power sequence identities", 10)
def criterion_3():
    rng = random.Random(3)
    points = [(rng.randint(-50, 50), rng.randint(-50, 50)) for _ in range(100)]
    bad = 0
    for x, y in points:
        for n in range(26):
            bad += f(n, x, y) != f_closed(n, x, y)
            for ring in range(1, 7):
                bad += p(n, ring, x, y) != p_closed(n, ring, x, y)
            for k in range(n + 1) if n <= 20 else ():
                l2, r2 = split_rule(n, k, x, y)
                bad += l2 != r2
    # (ii) and (iv) only need a definitive verdict in the report
    verdicts = {c: harness.verify(c).verdict for c in ("LEMMA22_i", "LEMMA22_ii", "LEMMA22_iii", "LEMMA22_iv")}
    required = verdicts["LEMMA22_i"] == verdicts["LEMMA22_iii"] == harness.VERIFIED
    definitive = all(v in (harness.VERIFIED, harness.REFUTED) for v in verdicts.values())
    ok = bad == 0 and required and definitive
    return ok, f"{bad} direct failures; verdicts " + ", ".join(f"{k}={v}" for k, v in verdicts.items())


@_timed(4, "ring laws of K_n(a, b) agree with matrix arithmetic", 30)
def criterion_4():
    bad = checked = 0
    rng5 = range(-5, 6)
    for n in range(1, 5):
        mats = {(a, b): KnElement(n, a, b).matrix() for a in rng5 for b in rng5}
        for (a, b), (c, d) in itertools.product(mats, repeat=2):
            x, y = KnElement(n, a, b), KnElement(n, c, d)
            X, Y = mats[a, b], mats[c, d]
            bad += kn_mul(x, y).matrix() != X @ Y
            bad += kn_add(x, y).matrix() != X + Y
            checked += 1
        for (a, b), X in mats.items():
            for m in range(6):
                bad += kn_pow(KnElement(n, a, b), m).matrix() != X ** m
        # remarks: zero divisors and powers of K_n(n, -1)
        bad += kn_mul(KnElement(n, 0, 1), KnElement(n, -n, 1)) != KnElement(n, 0, 0)
        for m in range(1, 7):
            bad += kn_pow(KnElement(n, n, -1), m) != kn_scale(n ** (m - 1), KnElement(n, n, -1))
    return bad == 0, f"{checked} ordered pairs exhaustively, {bad} failures"


@_timed(5, "block reduction of Phi_m preserves Smith form", 60)
def criterion_5():
    rng = random.Random(5)
    bad = 0
    cases = 250
    for _ in range(cases):
        m, k = rng.randint(2, 5), rng.randint(1, 3)
        A = IntMatrix.from_rows([[rng.randint(-9, 9) for _ in range(k)] for _ in range(k)])
        B = IntMatrix.from_rows([[rng.randint(-9, 9) for _ in range(k)] for _ in range(k)])
        bad += snf(phi(m, A, B)).diagonal != snf(phi_reduced(m, A, B)).diagonal
    return bad == 0, f"{cases} random cases, {bad} mismatches"


def _cone_points():
    for name, lo in (("path", 2), ("cycle", 4), ("complete", 2)):
        for n in range(lo, 11):
            for l in range(1, 5):
                for k in range(0, 5):
                    yield name, n, l, k


@_timed(6, "cone path/cycle/complete closed forms match the SNF oracle", 120)
def criterion_6():
    bad = checked = 0
    for name, n, l, k in _cone_points():
        bad += closed_form_group(name, n, l, k) != critical_group(reduced_laplacian(family(name, n, l, k)))
        checked += 1
    anchors = {
        ("path", 2): (3,),
        ("cycle", 4): (3, 15),
        ("cycle", 6): (8, 40),
        ("complete", 3): (4, 4),
    }
    for (name, n), factors in anchors.items():
        oracle = critical_group(reduced_laplacian(family(name, n, 1, 1)))
        bad += oracle.factors != factors or closed_form_group(name, n, 1, 1).factors != factors
    return bad == 0, f"{checked} sweep points and {len(anchors)} anchors, {bad} mismatches"


@_timed(7, "complete bipartite torsion anchor", None)
def criterion_7():
    bad = 0
    for m in range(2, 7):
        expected = canonicalize([m] * (2 * (m - 2)) + [m * m])
        G = kmm_group(m, 1, 0)
        bad += canonicalize([d for d in G.factors if d]) != expected
        bare = cuv("m", "m", "K", m).with_sink(2 * m - 1)
        bad += critical_group(reduced_laplacian(bare)) != expected
    return bad == 0, f"m = 2..6, {bad} mismatches"


@_timed(8, "group orders equal spanning tree counts", None)
def criterion_8():
    bad = checked = 0
    graphs_ = [family(name, n, l, k) for name, n, l, k in _cone_points()]
    graphs_ += [family("Kmm", m, 1, 0) for m in range(2, 7)]
    graphs_ += [cuv("m", "m", "K", m).with_sink(2 * m - 1) for m in range(2, 7)]
    for G in graphs_:
        L = reduced_laplacian(G)
        count = det(L)
        order = group_order(critical_group(L))
        bad += order != (count if count else INFINITE)
        checked += 1
    return bad == 0, f"{checked} graphs, {bad} disagreements"


_LEDGER = [f"G{i}" for i in range(1, 8)] + [f"COR39_{s}" for s in ("i", "ii", "iii", "iv")] + [
    f"COR310_{s}" for s in ("i", "ii", "iii")
]


@_timed(9, "verdict ledger for the two-block families", 300)
def criterion_9():
    reports = harness.verify_all()
    text = harness.report_json(reports)
    again = harness.report_json(harness.verify_all())
    by = {r.claim: r for r in reports}
    problems = []
    if text != again:
        problems.append("rerun differs")
    for name in _LEDGER:
        r = by[name]
        if r.points_checked != len(r.points) or r.verdict not in (harness.VERIFIED, harness.REFUTED, harness.PARTIAL):
            problems.append(f"{name} unclassified")
        if any(not pt.confirmed for pt in r.points if not pt.match):
            problems.append(f"{name} has unconfirmed failures")
    g2 = {(c.params["m"], c.params["l"], c.params["n"]): c for c in by["G2"].counterexamples}
    a, b = g2.get((3, 1, 1)), g2.get((3, 1, 0))
    if a is None or (a.oracle_order, a.claimed_order) != ("320", "432"):
        problems.append("G2 (3,1,1) anchor missing")
    if b is None or b.kind != "finite-vs-infinite":
        problems.append("G2 (3,1,0) anchor missing")
    doc = json.loads(text)
    summary = ", ".join(f"{n}={by[n].verdict}" for n in _LEDGER)
    return not problems and len(doc["reports"]) == len(harness.CLAIMS), "; ".join(problems) or summary


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 10)])
def test_criterion(criterion):
    outcome = criterion()
    print(outcome.line())
    assert outcome.ok, outcome.detail
    assert outcome.passed, f"over budget: {outcome.seconds:.2f}s >= {outcome.budget}s"


if __name__ == "__main__":
    for criterion in CRITERIA:
        print(criterion().line(), flush=True)
