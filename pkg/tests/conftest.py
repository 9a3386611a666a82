import numpy as np
import pytest

from irgame import AlphaModel, BimatrixGame

TABLE1 = {"payoff_A": [[10, 25], [5, 20]], "payoff_B": [[11, 4], [23, 17]]}
TABLE2 = {"payoff_A": [[10, 20], [5, 25]], "payoff_B": [[11, 4], [17, 23]]}
TABLE3 = {"payoff_A": [[10, 20], [5, 25]], "payoff_B": [[4, 11], [23, 17]]}
LABELS = {"row_labels": ["Red", "Green"], "col_labels": ["Left", "Right"]}


@pytest.fixture
def table1():
    return BimatrixGame.from_dict({**TABLE1, **LABELS})


@pytest.fixture
def table2():
    return BimatrixGame.from_dict({**TABLE2, **LABELS})


@pytest.fixture
def table3():
    return BimatrixGame.from_dict({**TABLE3, **LABELS})


@pytest.fixture
def shift_model():
    """a=(2,2), b=(1,3) with budget 4: p = (3/4, 1/4), q = (1/2, 1/2)."""
    return AlphaModel([2.0, 2.0], [1.0, 3.0], budget=4.0)


def random_alpha_model(rng, n_low=2, n_high=50):
    """Bonuses log-uniform on [0.1, 10]."""
    n = int(rng.integers(n_low, n_high + 1))
    a = 10.0 ** rng.uniform(-1, 1, n)
    b = 10.0 ** rng.uniform(-1, 1, n)
    return AlphaModel(a, b)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
