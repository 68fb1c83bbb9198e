from fractions import Fraction

import numpy as np
import pytest
from hypothesis import strategies as st

from maxconv import DiscreteMeasure


def half_half():
    return DiscreteMeasure([0, 1], [0.5, 0.5])


def three_one():
    return DiscreteMeasure([0, 1], [0.75, 0.25])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def brute_cdf(atoms, weights, x):
    """Direct summation over atoms, exact when weights are Fractions."""
    return sum((w for a, w in zip(atoms, weights) if a <= x), start=Fraction(0) if
               isinstance(weights[0], Fraction) else 0.0)


@st.composite
def measures(draw, max_atoms=6, nonnegative=False, lattice=None):
    """Random DiscreteMeasure; integer-lattice atoms make shared atoms common."""
    use_lattice = draw(st.booleans()) if lattice is None else lattice
    n = draw(st.integers(1, max_atoms))
    lo = 0 if nonnegative else -5
    if use_lattice:
        atoms = draw(st.lists(st.integers(lo, 5), min_size=n, max_size=n, unique=True))
    else:
        atoms = draw(st.lists(st.floats(lo, 5, allow_nan=False, width=32), min_size=n,
                              max_size=n, unique=True))
    counts = draw(st.lists(st.integers(1, 16), min_size=len(atoms), max_size=len(atoms)))
    total = sum(counts)
    return DiscreteMeasure(np.array(atoms, dtype=float), np.array(counts) / total)


ACCEPTANCE_LINES = []


def record_criterion(number, title, ok, detail):
    line = f"criterion {number} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
