import random
from fractions import Fraction

import pytest

from symvar.measures import DiscreteMeasure


def random_rational(rng, lo=-6, hi=6, max_den=6):
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def random_exact_measure(rng, max_atoms=4):
    """A random finitely supported law with rational atoms and weights."""
    n = rng.randint(1, max_atoms)
    locs = rng.sample([Fraction(i, 4) for i in range(-12, 13)], n)
    raw = [rng.randint(1, 9) for _ in range(n)]
    total = sum(raw)
    return DiscreteMeasure.from_atoms(
        [(t, Fraction(w, total)) for t, w in zip(locs, raw)], mode="exact"
    )


@pytest.fixture
def rng():
    return random.Random(20260826)
