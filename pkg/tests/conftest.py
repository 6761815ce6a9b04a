from __future__ import annotations

import time
from contextlib import contextmanager
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from symdesign.border import assemble, catalog_entry
from symdesign.designs import pg2

rationals = st.builds(Fraction, st.integers(-(10**4), 10**4), st.integers(1, 50))


@pytest.fixture(scope="session")
def pg2_cache():
    cache = {}

    def get(q):
        if q not in cache:
            cache[q] = pg2(q)
        return cache[q]

    return get


@pytest.fixture(scope="session")
def plane5_border(pg2_cache):
    """32 x 33 bordered matrix of PG(2,5) with C C^t = 5I + 9J."""
    return assemble(pg2_cache(5), catalog_entry("plane-5-d1").spec)


@pytest.fixture(scope="session")
def fano_border(pg2_cache):
    """8 x 9 bordered Fano matrix with C C^t = 2I + 9J (a=(2,2), c=3/5)."""
    from symdesign.border import BorderSpec
    from symdesign.designs import DesignParams
    from symdesign.exactmat import RatMatrix

    spec = BorderSpec(DesignParams(7, 3, 1), 8, 1, 1, (2, 2), 0, (Fraction(3, 5),),
                      RatMatrix([[Fraction(4, 5), Fraction(14, 5)]]), RatMatrix([[]]))
    return assemble(pg2_cache(2), spec)


# acceptance reporting: one line per criterion, printed in the terminal summary

ACCEPTANCE: dict[int, str] = {}


@contextmanager
def criterion(number: int, title: str, limit: float):
    start = time.perf_counter()
    ok = False
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < limit, f"criterion {number} took {elapsed:.2f}s, limit {limit}s"
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  ({elapsed:6.2f}s, limit {limit:g}s)  {title}"
        ACCEPTANCE[number] = line
        print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
