from __future__ import annotations

import pytest

from katokit.graph import build_graph
from katokit.sequence import parse_text


def labelled(text: str):
    """(sequence, graph, label -> node id) for a bracket-notation sequence."""
    seq = parse_text(text)
    g = build_graph(seq)
    return seq, g, {n.label: n.id for n in g.nodes}


@pytest.fixture
def small_sequences():
    from katokit.sequence import enumerate_up_to

    return list(enumerate_up_to(7))


# PASS/FAIL lines recorded by the acceptance suite, repeated in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
