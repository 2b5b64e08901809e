"""Heat and Schrödinger kernels for the Grushin operator by direct lambda-quadrature.

Three kernel representations are implemented:

* the Mehler closed form of the heat kernel (prefactor (2π)^{-(n/2+1)}),
* its rescaled variant after the change of variables s·lam -> lam
  (prefactor (2π s)^{-(n/2+1)}),
* the truncated eigenfunction series Σ_{|alpha|<=K} e^{-s(2|alpha|+n)|lam|}
  Phi_alpha^lam(x) Phi_alpha^lam(y),

plus the Schrödinger kernel on the horizontal strip |t - t1| < n|s|, whose
integrand has the *real* factor e^{-lam(t-t1)/s} and therefore the envelope
(2|lam|)^{n/2} e^{-(n - |t-t1|/|s|)|lam|}: the cutoff must grow like
log(1/tol) divided by the strip gap. Near lam = 0 all hyperbolic ratios are
replaced by their Taylor series (removable singularity).

The analytic continuation z -> is from the right half-plane fixes the
Schrödinger prefactor branch as (2π i s)^{-(n/2+1)} (principal powers).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import ConfigurationError, DomainError, StripConditionError
from .fields import Field

_SERIES_CUT = 1e-4


@dataclass(frozen=True)
class KernelQuadratureConfig:
    """Lambda-quadrature controls: cutoff (None = from the envelope), density, tolerance."""

    lambda_cutoff: float | None = None
    nodes_per_unit: float = 10.0
    tol: float = 1e-10

    def resolved_cutoff(self, n: int, gap: float) -> float:
        """Smallest L with (2L)^{n/2} e^{-gap L} < tol; checks a user-supplied cutoff."""
        if gap <= 0:
            raise StripConditionError(
                f"envelope gap {gap} <= 0: the strip condition |t-t1| < n|s| is violated")
        if self.lambda_cutoff is not None:
            L = self.lambda_cutoff
            if (2 * L) ** (n / 2) * math.exp(-gap * L) >= self.tol:
                raise ConfigurationError(
                    f"envelope bound (2L)^{{n/2}} e^{{-gap L}} = "
                    f"{(2*L)**(n/2)*math.exp(-gap*L):.3e} >= tol {self.tol} at L={L}")
            return L
        L = max(1.0, -math.log(self.tol) / gap)
        for _ in range(4):
            L = (-math.log(self.tol) + 0.5 * n * math.log(2 * L)) / gap
        return L * 1.05


def _gl_nodes(lo: float, hi: float, n_nodes: int, order: int = 12):
    """Composite Gauss-Legendre panels covering [lo, hi] with ~n_nodes points."""
    n_panels = max(4, int(math.ceil(n_nodes / order)))
    xs, ws = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(lo, hi, n_panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])[:, None]
    half = 0.5 * (edges[1:] - edges[:-1])[:, None]
    return (mid + half * xs[None, :]).ravel(), (half * np.broadcast_to(ws, (n_panels, order))).ravel()


def _sinh_ratio(a: np.ndarray, c: float) -> np.ndarray:
    """a / sinh(c a), even analytic; series below the cut (value 1/c at 0)."""
    z = c * a
    small = np.abs(z) < _SERIES_CUT
    zs = np.where(small, 0.0, z)
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = np.where(small, 0.0, a / np.sinh(np.where(small, 1.0, zs)))
    series = (1.0 - z * z / 6.0 + 7.0 * z**4 / 360.0) / c
    return np.where(small, series, direct)


def _coth_scaled(a: np.ndarray, c: float) -> np.ndarray:
    """a * coth(c a), even analytic; series below the cut (value 1/c at 0)."""
    z = c * a
    small = np.abs(z) < _SERIES_CUT
    zs = np.where(small, 1.0, z)
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = np.where(small, 0.0, a / np.tanh(zs))
    series = (1.0 + z * z / 3.0 - z**4 / 45.0) / c
    return np.where(small, series, direct)


def _point_geometry(x, y):
    """|x|², |y|², x·y and the dimension n for scalar or vector points."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    if x.shape != y.shape:
        raise DomainError("x and y must have the same dimension")
    return float(x @ x), float(y @ y), float(x @ y), x.size


def heat_kernel_mehler(x, t: float, y, t1: float, s: float,
                       cfg: KernelQuadratureConfig | None = None) -> float:
    """Grushin heat kernel K_s(x,t;y,t1) via the Mehler-form integral."""
    if s <= 0:
        raise DomainError(f"heat kernel requires s > 0, got {s}")
    cfg = cfg or KernelQuadratureConfig()
    x2, y2, xy, n = _point_geometry(x, y)
    gap = n * s + 0.5 * (x2 + y2 - 2 * xy)
    L = cfg.resolved_cutoff(n, gap)
    dt = t - t1
    lam, w = _gl_nodes(0.0, L, int(cfg.nodes_per_unit * L * (1 + abs(dt))))
    ratio = _sinh_ratio(lam, 2.0 * s)
    coth = _coth_scaled(lam, 2.0 * s)
    env = ratio ** (n / 2.0) * np.exp(-0.5 * (x2 + y2) * coth + xy * ratio)
    val = 2.0 * np.sum(w * np.cos(lam * dt) * env)
    return float(val / (2.0 * math.pi) ** (n / 2.0 + 1.0))


def heat_kernel_mehler_rescaled(x, t: float, y, t1: float, s: float,
                                cfg: KernelQuadratureConfig | None = None) -> float:
    """Heat kernel after s·lam -> lam: prefactor (2πs)^{-(n/2+1)}, s-free hyperbolics."""
    if s <= 0:
        raise DomainError(f"heat kernel requires s > 0, got {s}")
    cfg = cfg or KernelQuadratureConfig()
    x2, y2, xy, n = _point_geometry(x, y)
    gap = n + 0.5 * (x2 + y2 - 2 * xy) / s
    L = cfg.resolved_cutoff(n, gap)
    dt = (t - t1) / s
    lam, w = _gl_nodes(0.0, L, int(cfg.nodes_per_unit * L * (1 + abs(dt))))
    ratio = _sinh_ratio(lam, 2.0)
    coth = _coth_scaled(lam, 2.0)
    env = ratio ** (n / 2.0) * np.exp((-0.5 * (x2 + y2) * coth + xy * ratio) / s)
    val = 2.0 * np.sum(w * np.cos(lam * dt) * env)
    return float(val / (2.0 * math.pi * s) ** (n / 2.0 + 1.0))


def heat_kernel_series(x, t: float, y, t1: float, s: float, max_degree: int,
                       cfg: KernelQuadratureConfig | None = None) -> float:
    """Truncated eigenfunction series for the heat kernel, n inferred from x.

    Converges to the Mehler value only at rate O(1/max_degree): the k-tail
    lives in the lambda-window |lam| < 1/(s k) where the exponential damping
    has not set in. The lambda-integral itself is done with the substitution
    lam = u² (the integrand is then smooth) on Gauss-Legendre panels.
    """
    if s <= 0:
        raise DomainError(f"heat kernel requires s > 0, got {s}")
    if max_degree < 0:
        raise DomainError("max_degree must be >= 0")
    cfg = cfg or KernelQuadratureConfig()
    from .hermite import hermite_ladder, multi_indices

    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    n = x.size
    L = cfg.resolved_cutoff(n, n * s)
    dt = t - t1
    u, w = _gl_nodes(1e-9, math.sqrt(L), max(160, int(cfg.nodes_per_unit * math.sqrt(L) * 8)))
    lam = u * u
    alphas, degrees = multi_indices(n, max_degree)
    degrees = np.asarray(degrees)
    ladders_x = [hermite_ladder(max_degree, u * x[j]) for j in range(n)]
    ladders_y = [hermite_ladder(max_degree, u * y[j]) for j in range(n)]
    damping = np.exp(-s * np.outer(2 * degrees + n, lam))  # (Na, Nu)
    cross = np.ones((len(alphas), u.size))
    for r, alpha in enumerate(alphas):
        for j in range(n):
            cross[r] *= ladders_x[j][alpha[j]] * ladders_y[j][alpha[j]]
    series = np.sum(damping * cross, axis=0)  # (Nu,)
    integrand = np.cos(lam * dt) * lam ** (n / 2.0) * series
    val = 2.0 * np.sum(w * 2.0 * u * integrand)  # dlam = 2u du; factor 2 for lam < 0
    return float(val / (2.0 * math.pi))


@dataclass(frozen=True)
class StripKernelQuery:
    """One Schrödinger-kernel evaluation: source (y, t1), target (x, t), time s != 0."""

    x: object
    t: float
    y: object
    t1: float
    s: float

    def __post_init__(self):
        if self.s == 0:
            raise DomainError("Schrödinger kernel requires s != 0")
        n = np.atleast_1d(np.asarray(self.x, dtype=float)).size
        if abs(self.t - self.t1) >= n * abs(self.s):
            raise StripConditionError(
                f"|t - t1| = {abs(self.t - self.t1):.6g} >= n|s| = {n*abs(self.s):.6g}: "
                "the horizontal-strip condition |t - t1| < n|s| fails")


def _strip_integrand(lam, x2, y2, xy, dt, s, n):
    ratio = _sinh_ratio(np.abs(lam), 2.0)
    coth = _coth_scaled(np.abs(lam), 2.0)
    real_part = np.exp(-lam * dt / s)
    phase = np.exp(1j * (0.5 * (x2 + y2) * coth - xy * ratio) / s)
    return real_part * ratio ** (n / 2.0) * phase


def schrodinger_kernel_strip(q: StripKernelQuery,
                             cfg: KernelQuadratureConfig | None = None) -> complex:
    """H_s(x,t;y,t1) on the horizontal strip, by truncated lambda-quadrature."""
    cfg = cfg or KernelQuadratureConfig()
    x2, y2, xy, n = _point_geometry(q.x, q.y)
    dt = q.t - q.t1
    gap = n - abs(dt) / abs(q.s)
    L = cfg.resolved_cutoff(n, gap)
    rate = 1 + (x2 + y2 + 2 * abs(xy)) / (2 * abs(q.s)) + abs(dt / q.s)
    lam, w = _gl_nodes(-L, L, int(2 * cfg.nodes_per_unit * L * rate))
    vals = _strip_integrand(lam, x2, y2, xy, dt, q.s, n)
    prefactor = (2.0 * math.pi * 1j * q.s) ** -(n / 2.0 + 1.0)
    return complex(prefactor * np.sum(w * vals))


def dispersive_constant(n: int, tol: float = 1e-12, cutoff: float | None = None) -> float:
    """M = (2π)^{-(n/2+1)} ∫ (|lam|/sinh 2|lam|)^{n/2} e^{n|lam|/2} dlam.

    The integrand envelope (2|lam|)^{n/2} e^{-n|lam|/2} guarantees convergence;
    the cutoff is chosen from it unless supplied.
    """
    if n < 1:
        raise DomainError("dimension must be >= 1")
    cfg = KernelQuadratureConfig(lambda_cutoff=cutoff, tol=tol)
    L = cfg.resolved_cutoff(n, n / 2.0)

    def integrand(lam):
        r = lam / math.sinh(2 * lam) if lam > 1e-8 else 0.5 * (1 - (2 * lam) ** 2 / 6)
        return r ** (n / 2.0) * math.exp(n * lam / 2.0)

    val, _ = quad(integrand, 0.0, L, limit=400, epsabs=1e-14, epsrel=1e-13)
    return float(2.0 * val / (2.0 * math.pi) ** (n / 2.0 + 1.0))


def kernel_propagate(f: Field, s: float, targets,
                     cfg: KernelQuadratureConfig | None = None,
                     source_points: int = 64) -> np.ndarray:
    """Evaluate u(x,t) = ∫∫ H_s(x,t;y,t1) f(y,t1) dy dt1 at strip-interior targets.

    ``f`` must be compactly supported (support ball declared); ``targets`` is a
    sequence of (x, t) points, x scalar for n = 1 or length-n. Every
    (target, source) pair is strip-checked before any quadrature runs.
    """
    cfg = cfg or KernelQuadratureConfig()
    if f.support_radius is None:
        raise DomainError("kernel_propagate needs a field with a declared support ball")
    if s == 0:
        raise DomainError("propagation time must be nonzero")
    n = f.dimension
    c = f.center
    r0 = f.support_radius
    t1_max_offset = r0
    for x, t in targets:
        worst = abs(t - c[-1]) + t1_max_offset
        if worst >= n * abs(s):
            raise StripConditionError(
                f"target (x={x}, t={t}) with sources in |t1 - {c[-1]}| <= {r0}: "
                f"max |t - t1| = {worst:.6g} >= n|s| = {n*abs(s):.6g}")
    # midpoint tensor grid over the support box
    axes = [np.linspace(c[j] - r0, c[j] + r0, source_points + 1)[:-1]
            + r0 / source_points for j in range(n)]
    t1_nodes = np.linspace(c[-1] - r0, c[-1] + r0, source_points + 1)[:-1] + r0 / source_points
    step = 2 * r0 / source_points
    mesh = np.meshgrid(*axes, t1_nodes, indexing="ij")
    flats = [m.ravel() for m in mesh]
    fvals = np.asarray(f(*flats), dtype=complex)
    weight = step ** (n + 1)
    ys = np.stack(flats[:-1], axis=1)  # (Nsrc, n)
    t1s = flats[-1]
    y2 = np.sum(ys * ys, axis=1)
    out = np.empty(len(targets), dtype=complex)
    prefactor = (2.0 * math.pi * 1j * s) ** -(n / 2.0 + 1.0)
    for i, (x, t) in enumerate(targets):
        xv = np.atleast_1d(np.asarray(x, dtype=float))
        x2 = float(xv @ xv)
        xy = ys @ xv
        dts = t - t1s
        gap = n - np.max(np.abs(dts)) / abs(s)
        L = cfg.resolved_cutoff(n, gap)
        rate = 1 + (x2 + np.max(y2) + 2 * np.max(np.abs(xy))) / (2 * abs(s)) + np.max(np.abs(dts / s))
        lam, w = _gl_nodes(-L, L, int(2 * cfg.nodes_per_unit * L * rate))
        ratio = _sinh_ratio(np.abs(lam), 2.0)
        coth = _coth_scaled(np.abs(lam), 2.0)
        # (Nsrc, Nlam) integrand assembled in pieces to bound memory
        kernel_vals = np.zeros(len(t1s), dtype=complex)
        chunk = max(1, 4_000_000 // lam.size)
        for lo in range(0, len(t1s), chunk):
            sl = slice(lo, lo + chunk)
            rp = np.exp(np.multiply.outer(-dts[sl] / s, lam))
            ph = np.exp(1j * (0.5 * np.add.outer(x2 + y2[sl], np.zeros(lam.size)) * coth
                              - np.multiply.outer(xy[sl], ratio)) / s)
            kernel_vals[sl] = (rp * ratio ** (n / 2.0) * ph) @ w
        out[i] = prefactor * weight * np.sum(fvals * kernel_vals)
    return out
