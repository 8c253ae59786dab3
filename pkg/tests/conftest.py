import random
from fractions import Fraction

import pytest
import sympy
from sympy.polys.domains import GF as SymGF
from sympy.polys.matrices import DomainMatrix

from terracini.fields import PrimeField

ACCEPTANCE_LINES = []


def sympy_rank(m):
    """Independent rank oracle (sympy exact arithmetic)."""
    if isinstance(m.field, PrimeField):
        p = m.field.p
        K = SymGF(p)
        dm = DomainMatrix([[K(int(x)) for x in row] for row in m], (m.rows, m.cols), K)
        return dm.rank()
    return sympy.Matrix([[sympy.Rational(Fraction(x).numerator, Fraction(x).denominator)
                          for x in row] for row in m]).rank() if m.rows and m.cols else 0


@pytest.fixture
def rng():
    return random.Random(20240917)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def oracle_terracini_rank(points, d):
    """Rank of the first-partials matrix built symbolically by sympy."""
    n = len(points[0]) - 1
    xs = sympy.symbols(f"x0:{n + 1}")
    monos = sorted(sympy.itermonomials(xs, d, d), key=sympy.default_sort_key)
    rows = []
    for p in points:
        sub = {x: sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
               for x, c in zip(xs, p)}
        for x in xs:
            rows.append([sympy.diff(m, x).subs(sub) for m in monos])
    return sympy.Matrix(rows).rank()
