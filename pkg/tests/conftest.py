import pytest

from anfbridge.anf import Polynomial


def xs(*vs):
    """Monomial from 1-based variable numbers."""
    return tuple(v - 1 for v in vs)


def poly(*terms):
    """poly((1, 2), (1,), ()) is x1*x2 + x1 + 1 (1-based)."""
    return Polynomial(xs(*t) for t in terms)


@pytest.fixture
def five_eq():
    """The five-equation worked example with unique solution x1..x4 = 1, x5 = 0."""
    return [
        poly((1, 2), (3,), (4,), ()),
        poly((1, 2, 3), (1,), (3,), ()),
        poly((1, 3), (3, 4, 5), (3,)),
        poly((2, 3), (3, 5), ()),
        poly((2, 3), (5,), ()),
    ]


@pytest.fixture
def two_eq():
    return [poly((1, 2), (1,), ()), poly((2, 3), (3,))]


@pytest.fixture
def quad_xor():
    return poly((1, 3), (1,), (2,), (4,), ())


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
