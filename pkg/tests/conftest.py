import random

import pytest

from semicrossed.dynamics import make_cylinder, validate_sft
from semicrossed.algebra import semicrossed_poly


@pytest.fixture(scope="session")
def full2():
    return validate_sft(2, [[1, 1], [1, 1]])


@pytest.fixture(scope="session")
def gm():
    """Golden-mean shift: 1 may not follow 1."""
    return validate_sft(2, [[1, 1], [1, 0]])


@pytest.fixture(scope="session")
def cyc2():
    return validate_sft(2, [[0, 1], [1, 0]])


@pytest.fixture(scope="session")
def full3():
    return validate_sft(3, [[1, 1, 1], [1, 1, 1], [1, 1, 1]])


def rand_cylinder(rng: random.Random, g, window: int, real: bool = False):
    values = {}
    for w in g.admissible_words(window):
        if real:
            values[w] = rng.uniform(-2.0, 2.0)
        else:
            values[w] = complex(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))
    return make_cylinder(g, window, values)


def rand_poly(rng: random.Random, g, max_degree: int = 3, max_window: int = 2):
    coeffs = {}
    for n in range(rng.randint(1, max_degree + 1)):
        if n > 0 and rng.random() < 0.2:
            continue  # leave gaps in the support sometimes
        coeffs[n] = rand_cylinder(rng, g, rng.randint(1, max_window))
    if not coeffs:
        coeffs[0] = rand_cylinder(rng, g, 1)
    return semicrossed_poly(g, coeffs)
