from __future__ import annotations

import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hairpin.lift4 import transport_hypothesis
from hairpin.strand import BINARY, QUAD, Strand

settings.register_profile(
    "default",
    deadline=None,
    max_examples=150,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def strands(alphabet=BINARY, min_size: int = 0, max_size: int = 16):
    return st.lists(st.sampled_from(list(alphabet.symbols)), min_size=min_size, max_size=max_size).map(
        lambda syms: Strand.from_symbols(syms, alphabet)
    )


binary_strands = strands
quad_strands = lambda **kw: strands(QUAD, **kw)


def B(text: str) -> Strand:
    return Strand.from_text(text)


def random_transport_pair(rng: random.Random) -> tuple[Strand, Strand]:
    """A binary pair satisfying the lift transport hypothesis, built piecewise."""

    def free_of(bad: str, n: int) -> str:
        while True:
            w = "".join(rng.choice("01") for _ in range(n))
            if bad not in w:
                return w

    while True:
        core = free_of("1100", rng.randint(0, 3)) + "1100" + free_of("1100", rng.randint(0, 3))
        x_text = free_of("11", rng.randint(0, 4)) + core + free_of("00", rng.randint(0, 4))
        x = B(x_text)
        start = x_text.index(core) + 1
        y = x.sub(start, start + len(core) - 1)
        if transport_hypothesis(x, y):
            return x, y


# -- acceptance summary ---------------------------------------------------------

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Record a one-line verdict for an acceptance criterion."""

    def record(number: int, passed: bool, detail: str) -> None:
        ACCEPTANCE_LINES[number] = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
        print(ACCEPTANCE_LINES[number])

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
