import random
from fractions import Fraction

import pytest

from fusioncensus.cyclo import Cyclo, from_root

CONDUCTORS = [1, 2, 3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 24]


def random_cyclo(rng: random.Random, max_terms: int = 3) -> Cyclo:
    x = Cyclo(0)
    n = rng.choice(CONDUCTORS)
    for _ in range(rng.randint(0, max_terms)):
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        x = x + c * from_root(n, rng.randrange(n))
    return x


@pytest.fixture
def rng():
    return random.Random(20240611)
