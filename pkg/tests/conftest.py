import pytest

from skewpbw.coeff import GENERIC, CoeffMode
from skewpbw.fileformat import load_bundled
from skewpbw.pbwengine import Presentation, build_pbw
from skewpbw.skewalg import AlgebraContext

Q = GENERIC.q()
ONE = GENERIC.one()


def two_letter(p11, p12, p21, p22, mode=GENERIC):
    return AlgebraContext(("x1", "x2"), ("g1", "g2"), ((1, 0), (0, 1)), ((p11, p12), (p21, p22)), mode)


def one_letter(p, mode=GENERIC):
    return AlgebraContext(("x",), ("g",), ((1,),), ((p,),), mode)


def zeta3():
    m = CoeffMode(3)
    return m, m.q()


def bundled(name):
    """(file, ctx, presentation, system, data) for a bundled presentation."""
    pf = load_bundled(name)
    ctx = pf.context()
    pres = pf.presentation(ctx)
    system, data = build_pbw(pres)
    return pf, ctx, pres, system, data


@pytest.fixture(scope="session")
def qserre():
    return bundled("qserre")


@pytest.fixture(scope="session")
def free2():
    return bundled("free2")


@pytest.fixture(scope="session")
def commuting():
    return bundled("coideal_commuting")


@pytest.fixture(scope="session")
def rank1_generic():
    ctx = one_letter(Q)
    system, data = build_pbw(Presentation(ctx, [], 8))
    return ctx, system, data


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
