import json
from fractions import Fraction as F

import pytest

from conftest import random_exact_measure
from symvar.errors import OrderError, SizeError
from symvar.measures import (
    DiscreteMeasure,
    bernoulli,
    dilate,
    mean,
    moments_of,
    negate,
    shift,
    variance,
)


def test_bernoulli_atoms():
    mu = bernoulli(F(3, 10))
    assert mu.atoms == ((F(0), F(7, 10)), (F(1), F(3, 10)))
    assert bernoulli(F(0)).atoms == ((F(0), F(1)),)
    assert bernoulli(F(1)).atoms == ((F(1), F(1)),)


def test_bernoulli_rejects_bad_p():
    with pytest.raises(SizeError):
        bernoulli(F(-1, 10))
    with pytest.raises(SizeError):
        bernoulli(F(11, 10))


def test_bernoulli_moments_are_constant():
    m = moments_of(bernoulli(F(3, 10)), 13)
    assert m.values == (F(3, 10),) * 13


def test_negate():
    assert negate(bernoulli(F(3, 10))).atoms == ((F(-1), F(3, 10)), (F(0), F(7, 10)))
    pm = DiscreteMeasure.from_atoms([(F(-1), F(1, 2)), (F(1), F(1, 2))])
    assert negate(pm) == pm
    point = DiscreteMeasure.from_atoms([(F(0), F(1))])
    assert negate(point) == point


def test_negate_moments_alternate_sign(rng):
    mu = random_exact_measure(rng)
    m = moments_of(mu, 13).values
    mneg = moments_of(negate(mu), 13).values
    assert mneg == tuple((-1) ** n * v for n, v in enumerate(m, start=1))


def test_symmetric_two_atom_moments():
    pm = DiscreteMeasure.from_atoms([(F(-1), F(1, 2)), (F(1), F(1, 2))])
    assert moments_of(pm, 4).values == (F(0), F(1), F(0), F(1))


def test_variance():
    p = F(3, 10)
    assert variance(bernoulli(p)) == p * (1 - p)
    assert variance(negate(bernoulli(p))) == F(21, 100)
    assert variance(DiscreteMeasure.from_atoms([(F(5), F(1))])) == 0


def test_variance_invariant_under_negation(rng):
    for _ in range(20):
        mu = random_exact_measure(rng)
        assert variance(negate(mu)) == variance(mu)


def test_equality_case_second_moment():
    for p in (F(1, 10), F(3, 10), F(7, 10)):
        y = negate(bernoulli(p))
        assert moments_of(y, 2).values[1] == p


def test_shift_and_dilate():
    mu = bernoulli(F(3, 10))
    assert shift(mu, F(2)).atoms == ((F(2), F(7, 10)), (F(3), F(3, 10)))
    assert dilate(mu, F(-2)).atoms == ((F(-2), F(3, 10)), (F(0), F(7, 10)))
    assert mean(shift(mu, F(2))) == mean(mu) + 2


def test_duplicate_atoms_merge():
    mu = DiscreteMeasure.from_atoms([(F(1), F(1, 2)), (F(1), F(1, 2))])
    assert mu.atoms == ((F(1), F(1)),)
    muf = DiscreteMeasure.from_atoms([(0.5, 0.25), (0.5 + 1e-12, 0.75)], mode="float")
    assert len(muf.atoms) == 1


def test_weight_validation():
    with pytest.raises(SizeError):
        DiscreteMeasure.from_atoms([(F(0), F(1, 2))])
    with pytest.raises(SizeError):
        DiscreteMeasure.from_atoms([(F(0), F(-1)), (F(1), F(2))])
    with pytest.raises(SizeError):
        DiscreteMeasure.from_atoms([(0.0, 0.5), (1.0, 0.6)], mode="float")


def test_order_limit():
    with pytest.raises(OrderError):
        moments_of(bernoulli(F(1, 2)), 14)


def test_json_round_trip_exact():
    mu = DiscreteMeasure.from_atoms([(F(-1, 3), F(1, 4)), (F(1, 2), F(3, 4))])
    text = mu.to_json()
    obj = json.loads(text)
    assert obj["mode"] == "exact"
    assert obj["atoms"] == [["-1/3", "0.25"], ["0.5", "0.75"]]
    assert DiscreteMeasure.from_json(text) == mu


def test_json_round_trip_float():
    mu = DiscreteMeasure.from_atoms([(-1.0, 0.3), (0.0, 0.7)], mode="float")
    assert DiscreteMeasure.from_json(mu.to_json()) == mu
