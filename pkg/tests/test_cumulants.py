from fractions import Fraction as F
from math import comb

import pytest

from conftest import random_exact_measure, random_rational
from symvar.cumulants import (
    CumulantSequence,
    MomentSequence,
    convolve_moments,
    cumulants_to_moments,
    moments_to_cumulants,
    odd_moment_residual,
)
from symvar.errors import OrderError, SizeError
from symvar.measures import bernoulli, dilate, moments_of, negate
from symvar.partitions import IndependenceKind, enumerate_partitions

K = IndependenceKind
KINDS = (K.CLASSICAL, K.FREE, K.BOOLEAN)


def lattice_moment(kappa, kind, n):
    """Independent oracle: the defining sum over the partition lattice."""
    total = F(0)
    for part in enumerate_partitions(n, kind):
        prod = F(1)
        for b in part.blocks:
            prod *= kappa[len(b) - 1]
        total += prod
    return total


def test_transforms_match_lattice_sums():
    import random

    rng = random.Random(7)
    for kind in KINDS:
        for _ in range(10):
            kappa = tuple(random_rational(rng) for _ in range(7))
            m = cumulants_to_moments(CumulantSequence(kind, kappa))
            for n in range(1, 8):
                assert m.values[n - 1] == lattice_moment(kappa, kind, n)


def test_round_trip_exact(rng):
    for kind in KINDS:
        for _ in range(200):
            order = rng.randint(1, 12)
            m = MomentSequence(tuple(random_rational(rng) for _ in range(order)))
            k = moments_to_cumulants(m, kind)
            assert cumulants_to_moments(k).values == m.values


def test_bernoulli_free_cumulants_half():
    m = MomentSequence((F(1, 2),) * 4)
    k = moments_to_cumulants(m, K.FREE)
    assert k.values == (F(1, 2), F(1, 4), F(0), F(-1, 16))


@pytest.mark.parametrize("p", [F(3, 10), F(2, 7), F(9, 10)])
def test_bernoulli_boolean_cumulants(p):
    q = 1 - p
    m = MomentSequence((p,) * 3)
    k = moments_to_cumulants(m, K.BOOLEAN)
    assert k.values == (p, p * q, p * q * q)


def test_point_mass_at_zero_all_cumulants_vanish():
    m = MomentSequence((F(0),) * 10)
    for kind in KINDS:
        assert moments_to_cumulants(m, kind).values == (F(0),) * 10
        assert cumulants_to_moments(CumulantSequence(kind, (F(0),) * 10)).values == (F(0),) * 10


def test_semicircle_and_gaussian_moments():
    kappa = (F(0), F(1), F(0), F(0), F(0), F(0))
    semi = cumulants_to_moments(CumulantSequence(K.FREE, kappa))
    assert semi.values == (0, 1, 0, 2, 0, 5)  # Catalan numbers
    gauss = cumulants_to_moments(CumulantSequence(K.CLASSICAL, kappa))
    assert gauss.values == (0, 1, 0, 3, 0, 15)  # double factorials


def test_free_symmetrization_of_half_projection_is_arcsine():
    b = bernoulli(F(1, 2))
    ms = convolve_moments(moments_of(b, 8), moments_of(negate(b), 8), K.FREE)
    # arcsine on [-1,1]: m_{2k} = C(2k,k)/4^k
    expected = tuple(
        F(comb(n, n // 2), 4 ** (n // 2)) if n % 2 == 0 else F(0) for n in range(1, 9)
    )
    assert ms.values == expected


def test_classical_symmetrization_of_half_projection():
    b = bernoulli(F(1, 2))
    ms = convolve_moments(moments_of(b, 4), moments_of(negate(b), 4), K.CLASSICAL)
    # law {-1: 1/4, 0: 1/2, 1: 1/4}
    assert ms.values == (F(0), F(1, 2), F(0), F(1, 2))


def classical_binomial_convolution(mx, my):
    def m(seq, j):
        return F(1) if j == 0 else seq.values[j - 1]

    return tuple(
        sum(comb(n, j) * m(mx, j) * m(my, n - j) for j in range(n + 1))
        for n in range(1, mx.order + 1)
    )


def test_classical_convolution_equals_binomial_formula(rng):
    for _ in range(25):
        mux, muy = random_exact_measure(rng), random_exact_measure(rng)
        mx, my = moments_of(mux, 12), moments_of(muy, 12)
        assert convolve_moments(mx, my, K.CLASSICAL).values == classical_binomial_convolution(mx, my)


def test_convolution_identity_element(rng):
    zero = moments_of(bernoulli(F(0)), 9)
    for kind in KINDS:
        mu = random_exact_measure(rng)
        mx = moments_of(mu, 9)
        assert convolve_moments(mx, zero, kind).values == mx.values


def test_dilation_homogeneity(rng):
    for kind in KINDS:
        for s in (F(-1), F(2)):
            mu = random_exact_measure(rng)
            k1 = moments_to_cumulants(moments_of(mu, 10), kind)
            k2 = moments_to_cumulants(moments_of(dilate(mu, s), 10), kind)
            assert k2.values == tuple(s**n * v for n, v in enumerate(k1.values, start=1))


def test_symmetrization_kills_odd_moments(rng):
    for kind in KINDS:
        for _ in range(10):
            mu = random_exact_measure(rng)
            ms = convolve_moments(
                moments_of(mu, 13), moments_of(negate(mu), 13), kind
            )
            assert odd_moment_residual(ms) == 0


def test_second_moment_additivity(rng):
    for kind in KINDS:
        mux, muy = random_exact_measure(rng), random_exact_measure(rng)
        mx, my = moments_of(mux, 4), moments_of(muy, 4)
        ms = convolve_moments(mx, my, kind)
        var_sum = ms.values[1] - ms.values[0] ** 2
        varx = mx.values[1] - mx.values[0] ** 2
        vary = my.values[1] - my.values[0] ** 2
        assert var_sum == varx + vary


def test_odd_moment_residual_examples():
    assert odd_moment_residual(MomentSequence((F(3, 10),) * 6)) == F(3, 10)
    assert odd_moment_residual(MomentSequence((F(0),) * 6)) == 0


def test_order_limits():
    with pytest.raises(OrderError):
        MomentSequence((F(0),) * 14)
    with pytest.raises(OrderError):
        MomentSequence(())


def test_mismatched_orders_rejected():
    a = MomentSequence((F(1),) * 3)
    b = MomentSequence((F(1),) * 4)
    with pytest.raises(SizeError):
        convolve_moments(a, b, K.FREE)
