import random

import pytest
import sympy as sp
from gmpy2 import mpq
from hypothesis import strategies as st

from kfamily.polycore import PLANE, MultiPoly, Ring, poly_print
from kfamily.projmap import FamilyParams


def to_sympy(p: MultiPoly):
    """Independent view of a polynomial through sympy's parser."""
    names = {v: sp.Symbol(v) for v in p.ring.variables}
    return sp.sympify(poly_print(p).replace("^", "**"), locals=names)


def sympy_equal(p: MultiPoly, expr) -> bool:
    return sp.expand(to_sympy(p) - expr) == 0


@st.composite
def polys(draw, ring: Ring = PLANE, max_terms: int = 5, max_deg: int = 3, height: int = 9):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exps = tuple(draw(st.integers(0, max_deg)) for _ in ring.variables)
        num = draw(st.integers(-height, height))
        den = draw(st.integers(1, 4))
        terms[exps] = terms.get(exps, 0) + mpq(num, den)
    return ring.from_dict(terms)


@pytest.fixture
def rng():
    return random.Random(20240611)


def draw_params(n: int, rng: random.Random) -> FamilyParams:
    return FamilyParams.random(n, rng)


# acceptance reporting -------------------------------------------------------

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


class Criterion:
    """Collects named sub-checks for one acceptance criterion."""

    def __init__(self, number: int, title: str):
        self.number, self.title = number, title
        self.failures: list[str] = []

    def check(self, ok: bool, what: str) -> bool:
        if not ok:
            self.failures.append(what)
        return ok

    def finish(self) -> None:
        passed = not self.failures
        note = self.title if passed else f"{self.title} [failed: {'; '.join(self.failures)}]"
        ACCEPTANCE[self.number] = (passed, note)
        print(f"criterion {self.number:>2}: {'PASS' if passed else 'FAIL'}  {note}")
        assert passed, "; ".join(self.failures)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, note = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {note}")
