import pytest

from symvar.errors import CriticalCaseError, SizeError
from symvar.measures import variance
from symvar.optimizer import (
    GridSpec,
    SearchConfig,
    classical_min_variance,
    nc_min_variance,
    simplex_solve,
)

GRID = GridSpec(-2.0, 1.0, 0.25)


def test_simplex_trivial():
    w, value, status = simplex_solve([1.0, 0.0], [[1.0, 1.0]], [1.0])
    assert status == "optimal"
    assert value == pytest.approx(0.0, abs=1e-12)
    assert w[0] == pytest.approx(0.0, abs=1e-12)
    assert w[1] == pytest.approx(1.0, abs=1e-12)


def test_simplex_infeasible():
    # w1 + w2 = 1 and w1 + w2 = 2 cannot both hold
    _, _, status = simplex_solve([1.0, 1.0], [[1.0, 1.0], [1.0, 1.0]], [1.0, 2.0])
    assert status == "infeasible"


def test_simplex_redundant_rows():
    w, value, status = simplex_solve(
        [2.0, 1.0], [[1.0, 1.0], [2.0, 2.0]], [1.0, 2.0]
    )
    assert status == "optimal"
    assert value == pytest.approx(1.0, abs=1e-9)


def test_simplex_rejects_non_finite():
    with pytest.raises(SizeError):
        simplex_solve([float("nan")], [[1.0]], [1.0])


@pytest.mark.parametrize("p", [0.1, 0.2, 0.3, 0.4, 0.45, 0.6, 0.75, 0.9])
def test_classical_lp_attains_pq(p):
    result = classical_min_variance(p, GRID)
    assert result.status == "optimal"
    assert result.objective == pytest.approx(p * (1 - p), abs=1e-9)
    atoms = dict(result.measure.atoms)
    assert atoms[-1.0] == pytest.approx(p, abs=1e-9)
    assert atoms[0.0] == pytest.approx(1 - p, abs=1e-9)
    # objective is recomputed from the measure, not solver internals
    assert variance(result.measure) == pytest.approx(result.objective, abs=1e-12)


def test_classical_lp_spec_example_grid():
    result = classical_min_variance(0.3, GridSpec(-2.0, 1.0, 0.5))
    assert result.objective == pytest.approx(0.21, abs=1e-9)


def test_classical_half_p_upper_bound_only():
    # p = 1/2 the true minimum is open; y = -X gives Var = 1/4 upper bound
    result = classical_min_variance(0.5, GRID)
    assert result.status == "optimal"
    assert result.objective <= 0.25 + 1e-9


def test_moment_relaxation_monotone_in_k():
    exact = classical_min_variance(0.3, GRID).objective
    prev = -1.0
    for K in range(5):
        r = classical_min_variance(0.3, GRID, mode="moment_relax", relax_order=K)
        assert r.objective >= prev - 1e-9
        assert r.objective <= exact + 1e-9
        prev = r.objective


def test_infeasible_grid():
    # no grid point can pair with the +1 shift to symmetrize: all mass far positive
    result = classical_min_variance(0.3, GridSpec(3.0, 4.0, 0.5, must_include=()))
    assert result.status == "infeasible"


def test_grid_spec_validation():
    with pytest.raises(SizeError):
        GridSpec(1.0, 0.0, 0.5)
    with pytest.raises(SizeError):
        GridSpec(0.0, 1.0, -0.5)
    with pytest.raises(SizeError):
        GridSpec(0.0, 1e6, 1e-3)


def test_search_config_validation():
    with pytest.raises(SizeError):
        SearchConfig(max_odd_order=12)
    with pytest.raises(SizeError):
        SearchConfig(penalty_weights=(1e4, 1e2))
    with pytest.raises(SizeError):
        SearchConfig(restarts=0)


def test_nc_rejects_critical_and_classical():
    with pytest.raises(CriticalCaseError):
        nc_min_variance(0.5, "free")
    with pytest.raises(SizeError):
        nc_min_variance(0.3, "classical")


SMALL = SearchConfig(restarts=2, seed=99)


@pytest.mark.parametrize("kind", ["free", "boolean"])
def test_nc_search_small_config(kind):
    result = nc_min_variance(0.3, kind, SMALL)
    assert result.status == "optimal"
    assert result.residual < 1e-6
    assert 0.3 - 1e-4 <= result.objective <= 0.3 + 1e-3
    # falsification alarm: a converged objective below the theorem's bound
    assert not (result.objective < 0.3 - 1e-4 and result.residual < 1e-8)


def test_nc_search_deterministic():
    a = nc_min_variance(0.7, "boolean", SMALL)
    b = nc_min_variance(0.7, "boolean", SMALL)
    assert a.objective == b.objective
    assert a.residual == b.residual
    assert a.measure.atoms == b.measure.atoms


def test_opt_result_json():
    import json

    result = classical_min_variance(0.3, GRID)
    obj = json.loads(result.to_json())
    assert obj["status"] == "optimal"
    assert abs(obj["objective"] - 0.21) < 1e-9
    assert obj["measure"]["mode"] == "float"
