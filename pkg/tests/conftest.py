import random

import pytest

from rmsyndrome.linalg import FFMatrix, rank


def random_invertible(field, n, rng):
    while True:
        M = FFMatrix.from_rows(
            field, [[field.random_element(rng) for _ in range(n)] for _ in range(n)])
        if rank(M) == n:
            return M


@pytest.fixture
def rng():
    return random.Random(0xC0DE)
