import random

import pytest

from resmat import validate_zonotope

FAMILY_SEED = 20260819
FAMILY_SIZE = 20


def random_bounds(rng: random.Random, n: int) -> list[list[int]]:
    # columns are drawn sorted for the first n rows; the last row is free
    cols = []
    for _ in range(n):
        body = sorted(rng.randint(1, 3) for _ in range(n))
        body.append(rng.randint(1, 3))
        cols.append(body)
    return [[cols[j][i] for j in range(n)] for i in range(n + 1)]


def build_family(count: int = FAMILY_SIZE, seed: int = FAMILY_SEED):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.choice((2, 3))
        out.append(validate_zonotope(random_bounds(rng, n)))
    return out


@pytest.fixture(scope="session")
def system_family():
    return build_family()
