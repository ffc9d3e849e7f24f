from __future__ import annotations

from hypothesis import settings, strategies as st

from braidcat.braid import BraidWord
from braidcat.perm import BlockStructure, Permutation

settings.register_profile("default", deadline=None, max_examples=150)
settings.load_profile("default")


@st.composite
def permutations(draw, degree=None, max_degree=6):
    k = draw(st.integers(0, max_degree)) if degree is None else degree
    images = draw(st.permutations(list(range(1, k + 1))))
    return Permutation(tuple(images))


@st.composite
def words(draw, strands=None, max_strands=5, max_len=6):
    m = draw(st.integers(1, max_strands)) if strands is None else strands
    if m < 2:
        return BraidWord(m, ())
    letters = draw(st.lists(st.integers(1, m - 1), max_size=max_len))
    return BraidWord(m, tuple(letters))


@st.composite
def blocks(draw, parts=None, max_parts=4, max_size=3):
    n = draw(st.integers(0, max_parts)) if parts is None else parts
    return BlockStructure(tuple(draw(st.lists(st.integers(0, max_size), min_size=n, max_size=n))))


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
