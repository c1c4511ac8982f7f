from __future__ import annotations

import sys
from fractions import Fraction
from itertools import combinations
from pathlib import Path

from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from lightspan.graph import WeightedGraph  # noqa: E402

weights = st.fractions(min_value=0, max_value=50, max_denominator=6)
positive_weights = st.fractions(min_value=Fraction(1, 6), max_value=50, max_denominator=6)


@st.composite
def graphs(draw, max_n: int = 8, min_n: int = 1, weight=positive_weights, connected: bool = False):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    if connected:
        order = draw(st.permutations(range(n)))
        for a, b in zip(order, order[1:]):
            e = (min(a, b), max(a, b))
            if e not in chosen:
                chosen.append(e)
    return WeightedGraph(n, [(u, v, draw(weight)) for u, v in chosen])


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance.py" in getattr(rep, "nodeid", "") and rep.when == "call":
                lines.append((rep.nodeid.split("::")[-1], "PASS" if outcome == "passed" else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, verdict in sorted(lines):
            terminalreporter.write_line(f"{verdict}  {name}")
