from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from plateau.bitfn import BinaryMatrix, BooleanFunction, random_invertible  # noqa: E402

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

DATA = Path(__file__).parent.parent / "data"

# acceptance results, filled by test_acceptance and printed at the end of the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


@st.composite
def boolean_functions(draw, min_n: int = 1, max_n: int = 8):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    table = np.random.default_rng(seed).integers(0, 2, 1 << n, dtype=np.uint8)
    return BooleanFunction(n, table)


@st.composite
def invertible_matrices(draw, n: int):
    return random_invertible(n, draw(st.integers(0, 2**32 - 1)))


def anf(n: int, *terms) -> BooleanFunction:
    """Function from 1-based monomial index tuples; () is the constant 1."""
    from plateau.bitfn import monomial

    return BooleanFunction.from_anf(n, [monomial(n, *t) for t in terms])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


__all__ = ["ACCEPTANCE", "DATA", "anf", "boolean_functions", "invertible_matrices", "BinaryMatrix"]
