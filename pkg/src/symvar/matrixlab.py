"""Random-matrix realization of free independence.

A rank-round(p*n) diagonal projection E and a Haar-rotated diagonal Y become
asymptotically free as n grows, so normalized traces of powers of E+Y should
converge to the free-convolution predictions from the cumulant engine. The
same machinery probes the proof step

    phi(psi(e+y)) =? q phi(psi(y)) + p phi(psi(1+y))

for the nonlinear dual function psi, which the certificate module cannot
settle analytically; residuals are reported, never asserted.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

import numpy as np

from .certificate import psi as _psi
from .cumulants import MomentSequence, convolve_moments
from .errors import CriticalCaseError, SizeError
from .measures import DiscreteMeasure, bernoulli, moments_of
from .partitions import IndependenceKind

MAX_SIM_ORDER = 13


@dataclass(frozen=True)
class MatrixModel:
    """One (dimension, projection trace, symmetrizer law, seed) experiment."""

    n: int
    p: float
    y_law: DiscreteMeasure
    seed: int

    def __post_init__(self):
        if self.n < 2:
            raise SizeError("matrix dimension must be >= 2")
        if not 0 < self.p < 1:
            raise SizeError(f"p must lie in (0,1), got {self.p}")

    def rank(self):
        return int(round(self.p * self.n))

    def rank_error(self):
        """Trace discrepancy |rank/n - p| introduced by rounding."""
        return abs(self.rank() / self.n - self.p)


def sample_haar_unitary(n, seed):
    """Haar-distributed unitary via QR of a complex Ginibre matrix.

    The diagonal phase of R is divided out so the distribution is exactly
    Haar rather than QR-convention dependent.
    """
    if n < 1:
        raise SizeError("dimension must be >= 1")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def spectral_multiplicities(mu: DiscreteMeasure, n):
    """Eigenvalue counts per atom by largest-remainder rounding, summing to n."""
    weights = np.array([float(w) for _, w in mu.atoms])
    raw = weights * n
    counts = np.floor(raw).astype(int)
    short = n - counts.sum()
    order = np.argsort(-(raw - counts), kind="stable")
    for i in range(short):
        counts[order[i]] += 1
    return counts


def _eigenvalue_vector(mu, n):
    counts = spectral_multiplicities(mu, n)
    vals = [float(t) for t, _ in mu.atoms]
    return np.repeat(vals, counts)


def _realize(model: MatrixModel, rotate=True):
    """Return (e_diag, sum_eigenvalues) for E + Y.

    rotate=True conjugates Y by a Haar unitary (asymptotically free model);
    rotate=False interleaves the y spectrum inside each E block so E and Y
    commute and realize classical independence up to rounding.
    """
    n, r = model.n, model.rank()
    e = np.zeros(n)
    e[:r] = 1.0
    if rotate:
        d = _eigenvalue_vector(model.y_law, n)
        u = sample_haar_unitary(n, model.seed)
        y = (u * d) @ u.conj().T
        a = np.diag(e).astype(complex) + y
        lam = np.linalg.eigvalsh(a)
    else:
        d1 = _eigenvalue_vector(model.y_law, r)
        d0 = _eigenvalue_vector(model.y_law, n - r)
        lam = np.concatenate([1.0 + d1, d0])
    return e, lam


def simulate_free_sum(model: MatrixModel, order) -> MomentSequence:
    """Empirical moments tr((E+Y)^k)/n for k = 1..order, Haar-rotated model."""
    if not 1 <= order <= MAX_SIM_ORDER:
        raise SizeError(f"order must be in 1..{MAX_SIM_ORDER}")
    _, lam = _realize(model, rotate=True)
    return MomentSequence(tuple(float(np.mean(lam**k)) for k in range(1, order + 1)))


def test_proof_identity(model: MatrixModel, grid_free=True, func=None):
    """Residual |tr f(E+Y)/n - (q tr f(Y)/n + p tr f(1+Y)/n)| for f = psi.

    grid_free=True uses the Haar-rotated (asymptotically free) model; False
    uses the commuting block model, where the expansion holds exactly. A
    different test function may be supplied via func (e.g. identity).
    """
    p = model.p
    if func is None:
        if p == 0.5:
            raise CriticalCaseError()
        func = lambda t: _psi(t, p)  # noqa: E731
    q = 1.0 - p
    _, lam = _realize(model, rotate=grid_free)
    lhs = float(np.mean([func(t) for t in lam]))
    dy = _eigenvalue_vector(model.y_law, model.n)
    rhs = q * float(np.mean([func(t) for t in dy])) + p * float(
        np.mean([func(1.0 + t) for t in dy])
    )
    return abs(lhs - rhs)


def proof_identity_report(p, y_law, dims, seeds_per_dim, master_seed):
    """Residual table for the unproven expansion step, rotated vs commuting.

    Returns rows {"n", "seed", "rotated_residual", "commuting_residual"};
    no numeric target is asserted anywhere, the table IS the result.
    """
    rows = []
    for n in dims:
        ss = np.random.SeedSequence([master_seed, n])
        for child in ss.spawn(seeds_per_dim):
            seed = int(child.generate_state(1)[0])
            model = MatrixModel(n=n, p=p, y_law=y_law, seed=seed)
            rows.append(
                {
                    "n": n,
                    "seed": seed,
                    "rotated_residual": test_proof_identity(model, grid_free=True),
                    "commuting_residual": test_proof_identity(model, grid_free=False),
                }
            )
    return rows


def empirical_vs_predicted(model: MatrixModel, order, reps):
    """Mean/stderr of empirical moments over reps seeds vs free-convolution predictions.

    Flags any order where |mean - predicted| > 5*stderr + 10/n.
    """
    if reps < 1:
        raise SizeError("reps must be >= 1")
    me = moments_of(bernoulli(model.p), order)
    my = moments_of(model.y_law, order)
    predicted = convolve_moments(me, my, IndependenceKind.FREE).values
    ss = np.random.SeedSequence(model.seed)
    samples = np.empty((reps, order))
    for i, child in enumerate(ss.spawn(reps)):
        m = MatrixModel(model.n, model.p, model.y_law, int(child.generate_state(1)[0]))
        samples[i] = simulate_free_sum(m, order).values
    mean = samples.mean(axis=0)
    stderr = (
        samples.std(axis=0, ddof=1) / np.sqrt(reps) if reps > 1 else np.full(order, np.inf)
    )
    rows = []
    for k in range(order):
        tol = 5.0 * stderr[k] + 10.0 / model.n
        rows.append(
            {
                "n": model.n,
                "seed": model.seed,
                "order": k + 1,
                "empirical": float(mean[k]),
                "predicted": float(predicted[k]),
                "abs_error": float(abs(mean[k] - predicted[k])),
                "stderr": float(stderr[k]),
                "flagged": bool(abs(mean[k] - predicted[k]) > tol),
            }
        )
    return {
        "n": model.n,
        "p": model.p,
        "reps": reps,
        "rank_error": model.rank_error(),
        "orders": rows,
        "any_flagged": any(r["flagged"] for r in rows),
    }


def moments_csv(report):
    """CSV (n, seed, order, empirical, predicted, abs_error) for a report."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["n", "seed", "order", "empirical", "predicted", "abs_error"])
    for r in report["orders"]:
        writer.writerow(
            [r["n"], r["seed"], r["order"], r["empirical"], r["predicted"], r["abs_error"]]
        )
    return buf.getvalue()


def report_json(report):
    return json.dumps(report)
