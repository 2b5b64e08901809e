"""Quadrature rules, grids, and mixed Lebesgue norms.

The lambda axis always uses the midpoint grid lam_j = ±(j+1/2)·dlam, which
excludes lam = 0 exactly (the spectral parameter lives on R*) and is symmetric
under lam -> -lam. The conjugate uniform t-grid (dlam·dt = 2π/N_t, both grids
midpoint-centred) makes the discrete t <-> lambda transform an exact scaled
isometry, which is what the Plancherel tests rely on.

Infinity-norms are grid maxima and therefore lower bounds of the true sup.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import CoverageError, DomainError, EvaluationError, ParameterError

INF = math.inf


@dataclass(frozen=True)
class GaussHermiteRule:
    """Gauss-Hermite rule for the weight e^{-x^2}.

    ``weights`` are the classical weights (sum to sqrt(pi)); ``du_weights`` are
    the plain-Lebesgue effective weights w_i·e^{x_i^2}, computed stably through
    the Christoffel function 1/sum_k h_k(x_i)^2 so that large orders neither
    overflow nor underflow.
    """

    order: int
    nodes: np.ndarray
    weights: np.ndarray
    du_weights: np.ndarray

    def integrate(self, values) -> complex:
        """Plain integral over R of samples taken at ``nodes`` (Gaussian-decay integrands)."""
        return np.sum(self.du_weights * np.asarray(values), axis=-1)


@lru_cache(maxsize=32)
def gauss_hermite_rule(order: int) -> GaussHermiteRule:
    """Nodes and weights by Golub-Welsch (symmetric tridiagonal eigenproblem).

    Parameters
    ----------
    order : int
        Number of nodes N, 1 <= N <= 1024. The rule integrates
        x^m e^{-x^2} exactly for m <= 2N-1.
    """
    if not 1 <= order <= 1024:
        raise ParameterError(f"Gauss-Hermite order must lie in [1, 1024], got {order}")
    if order == 1:
        nodes = np.zeros(1)
    else:
        off = np.sqrt(np.arange(1, order) / 2.0)
        nodes, _ = eigh_tridiagonal(np.zeros(order), off)
        nodes = 0.5 * (nodes - nodes[::-1])  # enforce exact ± symmetry
    from .hermite import hermite_ladder

    ladder = hermite_ladder(max(order - 1, 0), nodes)
    du = 1.0 / np.sum(ladder * ladder, axis=0)
    w = du * np.exp(-nodes * nodes)
    w = 0.5 * (w + w[::-1])
    du = 0.5 * (du + du[::-1])
    return GaussHermiteRule(order=order, nodes=nodes, weights=w, du_weights=du)


@dataclass(frozen=True)
class UniformGrid:
    """Midpoint grid on [lower, upper] with ``count`` cells."""

    lower: float
    upper: float
    count: int

    def __post_init__(self):
        if self.count < 1 or not self.upper > self.lower:
            raise ParameterError("UniformGrid needs count >= 1 and upper > lower")

    @property
    def spacing(self) -> float:
        return (self.upper - self.lower) / self.count

    @property
    def nodes(self) -> np.ndarray:
        return self.lower + (np.arange(self.count) + 0.5) * self.spacing

    @property
    def weights(self) -> np.ndarray:
        return np.full(self.count, self.spacing)

    @classmethod
    def symmetric(cls, half_width: float, count: int) -> "UniformGrid":
        return cls(-half_width, half_width, count)


@dataclass(frozen=True)
class LambdaGrid:
    """Symmetric midpoint grid lam_j = ±(j+1/2)·spacing, j = 0..half_count-1."""

    half_count: int
    spacing: float

    def __post_init__(self):
        if self.half_count < 1 or self.spacing <= 0:
            raise ParameterError("LambdaGrid needs half_count >= 1 and spacing > 0")

    @property
    def nodes(self) -> np.ndarray:
        pos = (np.arange(self.half_count) + 0.5) * self.spacing
        return np.concatenate([-pos[::-1], pos])

    @property
    def weights(self) -> np.ndarray:
        return np.full(2 * self.half_count, self.spacing)

    @property
    def count(self) -> int:
        return 2 * self.half_count

    def integrate(self, values) -> complex:
        return np.sum(np.asarray(values) * self.spacing, axis=-1)

    def conjugate_time_grid(self) -> UniformGrid:
        """Uniform midpoint t-grid with dlam·dt = 2π/N_t; T = π/spacing."""
        n_t = self.count
        half_width = math.pi / self.spacing
        return UniformGrid.symmetric(half_width, n_t)


@dataclass(frozen=True)
class Ball:
    """Euclidean ball in (x, t); ``center`` is ordered (x_1, ..., x_n, t)."""

    center: tuple
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise DomainError(f"ball radius must be positive, got {self.radius}")


def _as_exponent(p) -> float:
    p = float(p)
    if not (p >= 1.0):
        raise ParameterError(f"Lebesgue exponent must lie in [1, inf], got {p}")
    return p


@dataclass(frozen=True)
class MixedNormSpec:
    """Exponent triple for L^r_t L^q_s L^p_x, innermost in x, plus an optional (x,t) ball."""

    outer_exponent: float  # r, over t
    middle_exponent: float  # q, over s
    inner_exponent: float  # p, over x
    region: Ball | None = None

    def __post_init__(self):
        for e in (self.outer_exponent, self.middle_exponent, self.inner_exponent):
            _as_exponent(e)


def _check_finite(values, label):
    values = np.asarray(values)
    if not np.all(np.isfinite(values)):
        bad = np.argwhere(~np.isfinite(values))[0]
        raise EvaluationError(f"non-finite sample in {label} at grid index {tuple(bad)}")
    return values


def _lp_reduce(mags: np.ndarray, weights: np.ndarray, p: float, axis: int) -> np.ndarray:
    """Weighted L^p reduction along ``axis``; p = inf is the grid maximum."""
    if p == INF:
        return np.max(mags, axis=axis)
    w = np.reshape(weights, [-1 if a == (axis % mags.ndim) else 1 for a in range(mags.ndim)])
    return np.sum(w * mags**p, axis=axis) ** (1.0 / p)


def mixed_norm(values, t_grid: UniformGrid, s_grid: UniformGrid, x_grids, spec: MixedNormSpec) -> float:
    """Discretized L^r_t L^q_s L^p_x norm of samples ``values[t, s, x1(, x2)]``.

    ``x_grids`` is one UniformGrid per spatial axis. When ``spec.region`` is
    set, the inner (x and s) norms only see points whose (x, t) coordinate
    lies in the ball.
    """
    values = _check_finite(values, "mixed_norm input")
    x_grids = list(x_grids)
    n = len(x_grids)
    if values.ndim != 2 + n:
        raise ParameterError(f"expected values with {2+n} axes (t, s, x...), got {values.ndim}")
    mags = np.abs(values).astype(float)
    if spec.region is not None:
        mask = _ball_mask(spec.region, x_grids, t_grid)  # (Nt, Nx...)
        mags = mags * mask[:, np.newaxis, ...]
    # innermost x-norms (last n axes)
    for j in range(n - 1, -1, -1):
        mags = _lp_reduce(mags, x_grids[j].weights, spec.inner_exponent, axis=2 + j)
    mags = _lp_reduce(mags, s_grid.weights, spec.middle_exponent, axis=1)
    return float(_lp_reduce(mags, t_grid.weights, spec.outer_exponent, axis=0))


def _ball_mask(ball: Ball, x_grids, t_grid: UniformGrid) -> np.ndarray:
    n = len(x_grids)
    if len(ball.center) != n + 1:
        raise ParameterError(f"ball center has {len(ball.center)} coordinates, expected {n+1}")
    for g, c in zip(list(x_grids) + [t_grid], ball.center):
        if c - ball.radius < g.nodes[0] - g.spacing or c + ball.radius > g.nodes[-1] + g.spacing:
            raise CoverageError(
                f"ball of radius {ball.radius} at {ball.center} exceeds sampled extent "
                f"[{g.nodes[0]:.3g}, {g.nodes[-1]:.3g}]"
            )
    shape = (t_grid.count,) + tuple(g.count for g in x_grids)
    total = np.zeros(shape)
    total += ((t_grid.nodes - ball.center[-1]) ** 2).reshape((-1,) + (1,) * len(x_grids))
    for j, g in enumerate(x_grids):
        sh = [1] * (1 + len(x_grids))
        sh[1 + j] = g.count
        total += ((g.nodes - ball.center[j]) ** 2).reshape(sh)
    return (total <= ball.radius**2).astype(float)


def ball_lp_norm(values, t_grid: UniformGrid, x_grids, p, ball: Ball) -> float:
    """L^p norm of samples ``values[t, x1(, x2)]`` over a Euclidean ball in (x, t)."""
    p = _as_exponent(p)
    values = _check_finite(values, "ball_lp_norm input")
    x_grids = list(x_grids)
    mask = _ball_mask(ball, x_grids, t_grid)
    mags = np.abs(values).astype(float) * mask
    if p == INF:
        return float(np.max(mags))
    w = t_grid.weights.reshape((-1,) + (1,) * len(x_grids)).copy()
    for j, g in enumerate(x_grids):
        sh = [1] * (1 + len(x_grids))
        sh[1 + j] = g.count
        w = w * g.weights.reshape(sh)
    return float(np.sum(w * mags**p) ** (1.0 / p))
