from __future__ import annotations

from hypothesis import strategies as st

from formalbaire import Leaf, Point, Sup

leaves = st.integers(min_value=1, max_value=9).map(Leaf)


def _sup(children):
    return st.builds(lambda kids, d: Sup(tuple(kids), d), st.lists(children, max_size=3), children)


tabular_ops = st.recursive(leaves, _sup, max_leaves=12)

small_seqs = st.lists(st.integers(min_value=0, max_value=5), max_size=6).map(tuple)

zero_tail_points = small_seqs.map(Point)
cycle_points = st.builds(
    Point.cycle, small_seqs, st.lists(st.integers(0, 5), min_size=1, max_size=3)
)
points = st.one_of(zero_tail_points, cycle_points)


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
