import pytest
from hypothesis import strategies as st

from fintop.finspace import FiniteSpace, make_space, sierpinski
from fintop.semigroup import cyclic_group, make_table
from fintop.topmonoid import assemble


@st.composite
def spaces(draw, min_size=1, max_size=5):
    """Random finite space: transitive closure of a random specialisation relation."""
    n = draw(st.integers(min_size, max_size))
    below = [draw(st.integers(0, (1 << n) - 1)) | 1 << i for i in range(n)]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            m = below[i]
            for j in range(n):
                if m >> j & 1 and below[j] & ~m:
                    m |= below[j]
            if m != below[i]:
                below[i] = m
                changed = True
    return FiniteSpace(tuple("abcdefg"[:n]), tuple(below))


@pytest.fixture
def sigma():
    return sierpinski()


@pytest.fixture
def m0_table():
    return make_table(["e", "z"], [["e", "z"], ["z", "z"]])


@pytest.fixture
def m0(m0_table):
    return assemble(make_space(["e", "z"], [[], ["z"], ["e", "z"]]), m0_table)


@pytest.fixture
def m0_e_open(m0_table):
    return assemble(make_space(["e", "z"], [[], ["e"], ["e", "z"]]), m0_table)


@pytest.fixture
def z2():
    t = cyclic_group(2)
    return assemble(make_space(t.points, [[], ["0"], ["1"], ["0", "1"]]), t)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
