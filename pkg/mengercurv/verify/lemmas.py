"""Checks of the geometric lemmas behind the characterization.

* the volume of a lifted simplex is controlled by the affine oscillation of
  f on a cube around its base point;
* the set of n-tuples of short vectors spanning a volume ≥ α r^n keeps a fixed
  fraction of its measure near any point of a cone-condition domain;
* the wedge of the lifted second difference with lifted offsets factors as
  |Δ²_h f(x)|·|w_1 ∧ ... ∧ w_n|.
"""

import math
from typing import Optional, Sequence, Union

import numpy as np

from mengercurv.core.exceptions import ArgumentError
from mengercurv.core.schemes import Estimate, Verdict
from mengercurv.funcspace.domain import Domain, unit_ball_volume
from mengercurv.funcspace.models import FunctionModel
from mengercurv.geometry.kernels import (
    COLLINEAR_TOL,
    diameter_batch,
    wedge_norm,
    wedge_norm_batch,
)
from mengercurv.geometry.schemes import PointTuple
from mengercurv.helpers.montecarlo import mean_estimate, sample_stream
from mengercurv.helpers.rng import CounterStream
from mengercurv.seminorms.affine import fit_batch, require_region, unit_lattice
from mengercurv.seminorms.schemes import OmegaConfig
from mengercurv.seminorms.second_difference import second_difference
from mengercurv.verify.schemes import LemmaBetaReport, ScanSummary

LEMMA_SLACK = 1.05


def random_tuples(domain: Domain, count: int, size: int, seed: int = 0) -> np.ndarray:
    """``count`` tuples of ``size`` uniform points of U, shape (count, size, n)."""
    stream = CounterStream(seed, size * domain.draws_per_point())
    block = stream.block(0, count)
    return np.stack([domain.sample(block) for _ in range(size)], axis=1)


def _as_tuples(tuples) -> np.ndarray:
    if isinstance(tuples, np.ndarray) and tuples.ndim == 3:
        return tuples.astype(float)
    return np.stack(
        [t.points if isinstance(t, PointTuple) else PointTuple(points=t).points for t in tuples]
    )


def check_lemma_beta(
    f: FunctionModel,
    tuples: Union[np.ndarray, Sequence[PointTuple]],
    base_index: int = 0,
    slack: float = LEMMA_SLACK,
    config: OmegaConfig = OmegaConfig(),
    keep_verdicts: bool = False,
) -> LemmaBetaReport:
    """
    Checks H^{n+1}(Δ(F(x_0), ..., F(x_{n+1}))) ≤ slack·2ω_n d^n ‖f − P_Q‖_∞(Q)
    for every tuple, with d its diameter and Q the cube of side 2d centered at
    the base point. The sup norm is taken on the sup grid of ``config``.

    :param tuples: Tuples of n+2 points of R^n, as an (M, n+2, n) array or a
        list of PointTuple.
    :raises ArgumentError: On malformed tuples or a cube outside f's region.
    """
    points = _as_tuples(tuples)
    m, k, n = points.shape
    if k != n + 2:
        raise ArgumentError(f"tuples in R^{n} need {n + 2} points, got {k}")
    if not 0 <= base_index < k:
        raise ArgumentError("base index out of range")

    base = points[:, base_index, :]
    d = diameter_batch(points)
    require_region(f, np.min(base - d[:, None], axis=0), np.max(base + d[:, None], axis=0))

    values = f(points)
    lifted = np.concatenate([points, values[..., None]], axis=-1)
    edges = lifted[:, 1:, :] - lifted[:, :1, :]
    spanned = wedge_norm_batch(edges)
    flat = spanned <= COLLINEAR_TOL * np.prod(np.linalg.norm(edges, axis=-1), axis=-1)
    lhs = np.where(flat, 0.0, spanned) / math.factorial(n + 1)

    side = 2.0 * d
    usable = side > 0.0
    sup = np.zeros(m)
    if np.any(usable):
        lower = base[usable] - d[usable, None]
        c0, g = fit_batch(f, lower, side[usable], config.fit_order)
        grid = unit_lattice(n, config.sup_grid) - 0.5
        nodes = base[usable][:, None, :] + side[usable, None, None] * grid
        sup[usable] = np.max(np.abs(f(nodes) - c0[:, None] - g @ grid.T), axis=1)
    rhs = slack * 2.0 * unit_ball_volume(n) * d**n * sup

    tolerance = 1e-12 * np.maximum(rhs, 1e-300)
    violated = lhs > rhs + tolerance
    positive = rhs > 0.0
    worst = float(np.max(lhs[positive] / rhs[positive])) if np.any(positive) else 0.0
    verdicts = (
        [
            Verdict(passed=not bool(v), lhs=float(a), rhs=float(b))
            for v, a, b in zip(violated, lhs, rhs)
        ]
        if keep_verdicts
        else []
    )
    return LemmaBetaReport(
        checked=m,
        violations=int(np.count_nonzero(violated)),
        slack=slack,
        worst_ratio=worst,
        verdicts=verdicts,
    )


def estimate_w_measure(
    n: int,
    alpha: float,
    samples: int = 200_000,
    seed: int = 0,
    domain: Optional[Domain] = None,
    x=None,
    r: Optional[float] = None,
    threads: int = 1,
) -> Estimate:
    """
    Measure of the n-tuples of vectors spanning a volume ≥ α r^n.

    Without a domain: H^{n²}(W_{1,α})/ω_n^n, the fraction of n-tuples from the
    unit ball with |w_1 ∧ ... ∧ w_n| ≥ α. With a domain, base point x and
    radius r: H^{n²}(W^x_{r,α})/r^{n²}, where additionally x + w_i ∈ U.
    """
    if not 0.0 < alpha < 1.0:
        raise ArgumentError(f"alpha must lie in (0, 1), got {alpha}")
    scale = 1.0
    if domain is not None:
        if x is None or r is None:
            raise ArgumentError("the domain variant needs a base point x and a radius r")
        x = domain._require_inside(x)
        if not 0.0 < r < domain.diameter:
            raise ArgumentError("need 0 < r < diam(U)")
        if domain.dimension != n:
            raise ArgumentError("domain dimension must equal n")
        scale = unit_ball_volume(n) ** n
    radius = 1.0 if r is None else float(r)

    def kernel(block):
        vectors = np.stack([block.ball(n, radius) for _ in range(n)], axis=1)
        keep = np.abs(np.linalg.det(vectors)) >= alpha * radius**n
        if domain is not None:
            keep &= np.all(domain.contains(x + vectors), axis=1)
        return keep.astype(float)

    (indicator,) = sample_stream(
        kernel, samples, n * (n + 1), seed, threads=threads, label="w-measure"
    )
    return mean_estimate(indicator, seed, scale=scale, mode="monte-carlo", alpha=alpha)


def estimate_ball_density(
    domain: Domain, y, r: float, samples: int = 200_000, seed: int = 0, threads: int = 1
) -> Estimate:
    """H^n(U ∩ B(y, r)) / (ω_n r^n)."""
    y = np.atleast_1d(np.asarray(y, dtype=float))
    if not r > 0.0:
        raise ArgumentError("radius must be positive")
    n = domain.dimension

    def kernel(block):
        return domain.contains(y + block.ball(n, r)).astype(float)

    (indicator,) = sample_stream(
        kernel, samples, n + 1, seed, threads=threads, label="ball density"
    )
    return mean_estimate(indicator, seed, mode="monte-carlo", radius=r)


def _laplace_sides(f: FunctionModel, x: np.ndarray, h: np.ndarray, ws: np.ndarray):
    """
    Both sides for batches: x, h of shape (M, n), ws of shape (M, n, n).

    Both stacks are square, so each wedge norm is an absolute determinant.

    :return: (wedge of lifted vectors, |Δ²_h f(x)|·|w_1 ∧ ... ∧ w_n|)
    """
    m, n = x.shape
    delta = second_difference(f, x, h)
    first = np.concatenate([np.zeros((m, 1, n)), delta[:, None, None]], axis=-1)
    rises = f(x[:, None, :] + ws) - f(x)[:, None]
    rest = np.concatenate([ws, rises[..., None]], axis=-1)
    lhs = np.abs(np.linalg.det(np.concatenate([first, rest], axis=1)))
    rhs = np.abs(delta) * np.abs(np.linalg.det(ws))
    return lhs, rhs


def laplace_identity_check(
    f: FunctionModel, x, h, ws: Sequence, tol: float = 1e-10
) -> Verdict:
    """
    Checks the factorization

        |(0, Δ²_h f(x)) ∧ (w_1, f(x+w_1) − f(x)) ∧ ... | = |Δ²_h f(x)|·|w_1 ∧ ... ∧ w_n|.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    h = np.atleast_1d(np.asarray(h, dtype=float))
    ws = np.array([np.atleast_1d(w) for w in ws], dtype=float)
    n = x.size
    if h.size != n or ws.shape != (n, n):
        raise ArgumentError(f"need h in R^{n} and {n} vectors w_i in R^{n}")
    lhs, rhs = _laplace_sides(f, x[None, :], h[None, :], ws[None, ...])
    lhs, rhs = float(lhs[0]), float(rhs[0])
    passed = abs(lhs - rhs) <= tol * max(abs(rhs), abs(lhs), np.finfo(float).tiny)
    return Verdict(
        passed=passed or lhs == rhs,
        lhs=lhs,
        rhs=rhs,
        kind="identity",
        details={"wedge_w": wedge_norm(*ws)},
    )


def laplace_identity_audit(
    f: FunctionModel,
    domain: Domain,
    count: int = 10_000,
    seed: int = 0,
    tol: float = 1e-9,
) -> ScanSummary:
    """Random (x, h, w) with all shifted points in U; max relative discrepancy."""
    n = domain.dimension
    stream = CounterStream(seed, domain.draws_per_point() + (n + 1) * (n + 1))
    block = stream.block(0, count)
    x = domain.sample(block)
    reach = domain.diameter / 4.0
    h = block.ball(n, reach)
    ws = np.stack([block.ball(n, reach) for _ in range(n)], axis=1)

    inside = domain.contains(x + h) & domain.contains(x - h)
    inside &= np.all(domain.contains(x[:, None, :] + ws), axis=1)
    lhs, rhs = _laplace_sides(f, x[inside], h[inside], ws[inside])
    scale = np.maximum(np.maximum(lhs, rhs), np.finfo(float).tiny)
    discrepancy = np.abs(lhs - rhs) / scale
    worst = float(np.max(discrepancy)) if discrepancy.size else 0.0
    return ScanSummary(
        checked=int(np.count_nonzero(inside)),
        max_relative_discrepancy=worst,
        tolerance=tol,
        passed=worst < tol,
    )
