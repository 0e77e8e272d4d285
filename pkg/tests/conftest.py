import glob
import os

import pytest
from hypothesis import settings

from qfamily.algebra import dihedral_family, sl2z3_linear
from qfamily.chains import nosaka_theta
from qfamily.cli import bundled_corpus
from qfamily.diagram import load_diagram, parse_diagram

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

THETA = """
name 0_1
vertex u a0 b0 c0
vertex v a1 c1 b1
edge a a0 a1
edge b b0 b1
edge c c0 c1
"""

CIRCLE = "circle o\n"

# a single closed curve with one crossing
KINK_PD = [[1, 2, 2, 1]]


@pytest.fixture(scope="session")
def sl2():
    return sl2z3_linear()


@pytest.fixture(scope="session")
def theta_c(sl2):
    return nosaka_theta(sl2)


@pytest.fixture(scope="session")
def r3fam():
    return dihedral_family(3)


@pytest.fixture(scope="session")
def theta_diagram():
    return parse_diagram(THETA)


@pytest.fixture(scope="session")
def circle_diagram():
    return parse_diagram(CIRCLE)


def corpus_paths():
    return sorted(glob.glob(os.path.join(bundled_corpus(), "*.hkd")))


@pytest.fixture(scope="session")
def corpus():
    return [load_diagram(p) for p in corpus_paths()]


# acceptance summary -------------------------------------------------

ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
