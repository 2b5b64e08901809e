"""Surfaces in N_0^n x R* x R, localized measures, restriction/extension operators.

The Schrödinger surface is the graph nu = (2|alpha|+n)|lam|; the wave surface
S_0 = S_+ ∪ S_- has the two sheets nu = ±sqrt((2|alpha|+n)|lam|). Measures are
pushforwards of counting ⊗ Lebesgue under the graph map, localized by a
smooth even compactly supported weight psi evaluated at the surface height:

    ∫_S Θ dσ_loc = Σ_alpha ∫ Θ(alpha, lam, nu(alpha,lam)) ψ(nu(alpha,lam)) dlam.

Restriction evaluates the (x,t,s)-transform *at the exact surface frequency*
(direct s-quadrature at nu(alpha, lam), no nu-grid interpolation); extension
is the adjoint superposition with prefactor (2π)^{-2}, so

    <restrict(f), Θ>_{L²(S,dσ_loc)} = (2π)² <f, extend(Θ)>_{L²(R^{n+2})}.

With that normalization the free flow satisfies e^{-isG}f = 2π·extend(fhat∘π).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, ParameterError
from .fields import Field, smooth_window
from .grids import LambdaGrid, UniformGrid, gauss_hermite_rule
from .hermite import hermite_ladder, laguerre_ladder, multi_indices
from .transform import SpectralCoefficients, TransformGrid, _basis_rows, _x_quadrature

SCHRODINGER = "schrodinger"
WAVE_PLUS = "wave_plus"
WAVE_MINUS = "wave_minus"
WAVE_UNION = "wave_union"


@dataclass(frozen=True)
class Surface:
    """Dispersion surface over (alpha, lambda) in N_0^n x R* x R."""

    kind: str
    dimension: int = 1

    def __post_init__(self):
        if self.kind not in (SCHRODINGER, WAVE_PLUS, WAVE_MINUS, WAVE_UNION):
            raise ParameterError(f"unknown surface kind {self.kind!r}")

    @property
    def sheets(self) -> tuple[str, ...]:
        if self.kind == WAVE_UNION:
            return (WAVE_PLUS, WAVE_MINUS)
        return (self.kind,)

    def dispersion(self, degrees, lam, sheet: str | None = None) -> np.ndarray:
        """nu(alpha, lam): (2|alpha|+n)|lam| or ±sqrt of it, shape (n_alpha, n_lambda)."""
        sheet = sheet or self.kind
        base = np.multiply.outer(2 * np.asarray(degrees) + self.dimension,
                                 np.abs(np.asarray(lam)))
        if sheet == SCHRODINGER:
            return base
        if sheet == WAVE_PLUS:
            return np.sqrt(base)
        if sheet == WAVE_MINUS:
            return -np.sqrt(base)
        raise ParameterError("dispersion of the union must name a sheet")


@dataclass(frozen=True)
class LocalizedMeasure:
    """Surface plus the localizing weight psi (smooth, even, compact support, sup <= 1)."""

    surface_kind: str
    dimension: int
    psi: Callable
    psi_label: str = "smooth even bump, psi=1 on [-1/2,1/2], supp (-1,1)"

    def __post_init__(self):
        probe = np.linspace(-4.0, 4.0, 161)
        vals = np.asarray(self.psi(probe), dtype=float)
        if np.any(np.abs(vals) > 1.0 + 1e-12):
            raise ParameterError("localizing weight must satisfy |psi| <= 1")
        if np.max(np.abs(vals - np.asarray(self.psi(-probe), dtype=float))) > 1e-12:
            raise ParameterError("localizing weight must be even")

    @classmethod
    def default(cls, surface_kind: str = SCHRODINGER, dimension: int = 1,
                scale: float = 1.0) -> "LocalizedMeasure":
        base = smooth_window(plateau=0.5, support=1.0)
        if scale == 1.0:
            return cls(surface_kind, dimension, base)
        return cls(surface_kind, dimension, lambda v: base(np.asarray(v) / scale),
                   psi_label=f"smooth even bump, psi=1 on [-{scale/2}, {scale/2}], "
                             f"supp (-{scale}, {scale})")

    @property
    def sheets(self) -> tuple[str, ...]:
        if self.surface_kind == WAVE_UNION:
            return (WAVE_PLUS, WAVE_MINUS)
        return (self.surface_kind,)

    def heights(self, degrees, lam_nodes, sheet: str) -> np.ndarray:
        """nu(alpha, lam) with shape (n_alpha, n_lambda)."""
        base = np.multiply.outer(2 * np.asarray(degrees) + self.dimension,
                                 np.abs(np.asarray(lam_nodes)))
        if sheet == SCHRODINGER:
            return base
        if sheet == WAVE_PLUS:
            return np.sqrt(base)
        if sheet == WAVE_MINUS:
            return -np.sqrt(base)
        raise ParameterError(f"unknown sheet {sheet!r}")


@dataclass
class SurfaceDensity:
    """Theta(alpha, lam_j) per sheet: values shape (n_sheets, n_alpha, n_lambda)."""

    measure: LocalizedMeasure
    max_degree: int
    lambda_grid: LambdaGrid
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        n_alpha = len(multi_indices(self.measure.dimension, self.max_degree)[0])
        expected = (len(self.measure.sheets), n_alpha, self.lambda_grid.count)
        if self.values.shape != expected:
            raise ParameterError(f"values shape {self.values.shape} != {expected}")
        if not np.all(np.isfinite(self.values)):
            raise ParameterError("surface density contains non-finite entries")

    @property
    def degrees(self) -> np.ndarray:
        return np.asarray(multi_indices(self.measure.dimension, self.max_degree)[1])

    def weight_table(self, localized: bool = True) -> np.ndarray:
        """psi(nu) per (sheet, alpha, lambda); ones when localized=False."""
        if not localized:
            return np.ones_like(self.values, dtype=float)
        tables = []
        for sheet in self.measure.sheets:
            nu = self.measure.heights(self.degrees, self.lambda_grid.nodes, sheet)
            tables.append(np.asarray(self.measure.psi(nu), dtype=float))
        return np.stack(tables)


def surface_l2_norm(theta: SurfaceDensity, localized: bool = True) -> float:
    """sqrt(Σ_sheets Σ_alpha Σ_j w_j |Theta|² psi(nu)); psi dropped when localized=False."""
    w = theta.lambda_grid.spacing
    psi = theta.weight_table(localized)
    return float(np.sqrt(np.sum(psi * np.abs(theta.values) ** 2) * w))


def surface_inner_product(a: SurfaceDensity, b: SurfaceDensity, localized: bool = True) -> complex:
    """<a, b> in L²(S, dσ_loc)."""
    w = a.lambda_grid.spacing
    psi = a.weight_table(localized)
    return complex(np.sum(psi * a.values * np.conj(b.values)) * w)


def pushforward_density(ghat: SpectralCoefficients, measure: LocalizedMeasure) -> SurfaceDensity:
    """Theta = ghat ∘ π|_S for a function of (alpha, lambda) only (copied to every sheet)."""
    vals = np.stack([ghat.values for _ in measure.sheets])
    return SurfaceDensity(measure, ghat.max_degree, ghat.lambda_grid, vals)


def restrict(f: Field, measure: LocalizedMeasure, grid: TransformGrid,
             s_grid: UniformGrid) -> SurfaceDensity:
    """Theta(alpha, lam) = fhat(alpha, lam, nu(alpha, lam)) by direct quadrature.

    The s-integral ∫ f e^{i nu s} ds runs at the exact surface frequency of
    each (alpha, lam) node, so no nu-grid is ever built. ``s_grid`` must
    resolve the largest |nu| carried by the localizing weight (the midpoint
    rule aliases at 2π/Δs).
    """
    if f.time_axes != 2 or f.dimension != grid.dimension:
        raise ParameterError("restrict expects a (x, t, s) field matching the grid dimension")
    if f.decay_tag == "generic" and f.support_radius is None:
        raise DomainError("restrict refuses fields without declared decay")
    tg = grid.time_grid
    lam_nodes = grid.lambda_grid.nodes
    half = grid.lambda_grid.half_count
    degrees = np.asarray(multi_indices(grid.dimension, grid.max_degree)[1])
    sheets = measure.sheets
    out = np.empty((len(sheets), len(grid.indices), lam_nodes.size), dtype=complex)
    s_nodes, ds = s_grid.nodes, s_grid.spacing
    for jpos in range(half):
        lam_abs = (jpos + 0.5) * grid.lambda_grid.spacing
        axes = _x_quadrature(f, grid, lam_abs)
        mesh = np.meshgrid(*[nodes for nodes, _ in axes], indexing="ij")
        flat = [m.ravel() for m in mesh]
        samples = np.asarray(
            f(*[cc[:, None, None] for cc in flat], tg.nodes[None, :, None],
              s_nodes[None, None, :]), dtype=complex)  # (Nx, Nt, Ns)
        wx = np.ones(flat[0].size)
        for j, (_, weights) in enumerate(axes):
            sh = [1] * len(axes)
            sh[j] = weights.size
            wx = wx * np.broadcast_to(weights.reshape(sh),
                                      tuple(nn.size for nn, _ in axes)).ravel()
        basis = _basis_rows(grid, lam_abs, axes) * wx[None, :]
        for sign, col in ((1.0, half + jpos), (-1.0, half - 1 - jpos)):
            phase = np.exp(1j * sign * lam_abs * tg.nodes) * tg.spacing
            f_lam = np.einsum("xts,t->xs", samples, phase)  # (Nx, Ns)
            partial = basis @ f_lam  # (Na, Ns): still to be s-transformed
            for isheet, sheet in enumerate(sheets):
                nu = measure.heights(degrees, np.array([sign * lam_abs]), sheet)[:, 0]
                s_phase = np.exp(1j * np.outer(nu, s_nodes)) * ds  # (Na, Ns)
                out[isheet, :, col] = np.sum(partial * s_phase, axis=1)
    return SurfaceDensity(measure, grid.max_degree, grid.lambda_grid, out)


def synthesize_extension(theta: SurfaceDensity, x_axes, t_nodes, s_nodes) -> np.ndarray:
    """extend(Theta) sampled on a (t, s, x...) tensor grid.

    (2π)^{-2} Σ_sheets Σ_alpha Σ_j w_j e^{-i nu s} e^{-i lam t} Theta
    Phi_alpha^lam(x) psi(nu).
    """
    t_nodes = np.asarray(t_nodes, dtype=float)
    s_nodes = np.asarray(s_nodes, dtype=float)
    x_axes = [np.asarray(a, dtype=float) for a in x_axes]
    lam = theta.lambda_grid.nodes
    w = theta.lambda_grid.spacing
    degrees = theta.degrees
    psi = theta.weight_table(localized=True)
    n = theta.measure.dimension
    indices = multi_indices(n, theta.max_degree)[0]
    nshape = tuple(a.size for a in x_axes)
    out = np.zeros((t_nodes.size, s_nodes.size) + nshape, dtype=complex)
    for j, lj in enumerate(lam):
        la = abs(lj)
        root = math.sqrt(la)
        scale = la ** (n / 4.0)
        ladders = [hermite_ladder(theta.max_degree, root * a) for a in x_axes]
        mode_sum = np.zeros((len(indices), s_nodes.size), dtype=complex)
        for isheet, sheet in enumerate(theta.measure.sheets):
            nu = theta.measure.heights(degrees, np.array([lj]), sheet)[:, 0]
            weighted = theta.values[isheet, :, j] * psi[isheet, :, j]
            if not np.any(weighted):
                continue
            mode_sum += weighted[:, None] * np.exp(-1j * np.outer(nu, s_nodes))
        if not np.any(mode_sum):
            continue
        if n == 1:
            profile = scale * np.einsum("as,ax->sx", mode_sum, ladders[0])
        else:
            K1 = theta.max_degree + 1
            D = np.zeros((K1, K1, s_nodes.size), dtype=complex)
            a1s = np.fromiter((a[0] for a in indices), dtype=int)
            a2s = np.fromiter((a[1] for a in indices), dtype=int)
            D[a1s, a2s, :] = mode_sum
            profile = scale * np.einsum("ax,abs,by->sxy", ladders[0], D, ladders[1])
        phase = np.exp(-1j * lj * t_nodes) * w
        out += phase.reshape((-1, 1) + (1,) * len(nshape)) * profile[np.newaxis, ...]
    return out / (2.0 * math.pi) ** 2


def extend(theta: SurfaceDensity) -> Field:
    """extend(Theta) as an evaluable field on (x, t, s)."""

    def f(*coords):
        *xs, t, s = [np.asarray(a, dtype=float) for a in coords]
        shape = np.broadcast(*coords).shape
        xs = [np.broadcast_to(a, shape).ravel() for a in xs]
        t = np.broadcast_to(t, shape).ravel()
        s = np.broadcast_to(s, shape).ravel()
        lam = theta.lambda_grid.nodes
        w = theta.lambda_grid.spacing
        degrees = theta.degrees
        psi = theta.weight_table(localized=True)
        n = theta.measure.dimension
        indices = multi_indices(n, theta.max_degree)[0]
        acc = np.zeros(t.size, dtype=complex)
        for j, lj in enumerate(lam):
            la = abs(lj)
            root = math.sqrt(la)
            scale = la ** (n / 4.0)
            ladders = [hermite_ladder(theta.max_degree, root * a) for a in xs]
            lam_sum = np.zeros(t.size, dtype=complex)
            for isheet, sheet in enumerate(theta.measure.sheets):
                nu = theta.measure.heights(degrees, np.array([lj]), sheet)[:, 0]
                weighted = theta.values[isheet, :, j] * psi[isheet, :, j]
                if not np.any(weighted):
                    continue
                for r, alpha in enumerate(indices):
                    if weighted[r] == 0:
                        continue
                    term = np.ones(t.size)
                    for jj, kj in enumerate(alpha):
                        term = term * ladders[jj][kj]
                    lam_sum += weighted[r] * np.exp(-1j * nu[r] * s) * scale * term
            acc += np.exp(-1j * lj * t) * w * lam_sum
        return (acc / (2.0 * math.pi) ** 2).reshape(shape)

    return Field(f, dimension=theta.measure.dimension, time_axes=2, decay_tag="gaussian")


def radial_projection_coefficient(phi, k: int, lam: float, n: int,
                                  r_points: int = 400, r_max: float | None = None) -> float:
    """Weight R_{2k} of the radial Laguerre projection.

    R_{2k}(phi) = [Γ(k+1)Γ(n/2) / (Γ(k+n/2) π^{n/2})] |lam|^{n/2}
                  ∫ phi(x) L_k^{n/2-1}(|lam||x|²) e^{-|lam||x|²/2} dx,
    the normalization that makes P_{2k}(lam)phi = R_{2k} L_k^{n/2-1} e^{-...}
    an orthogonal projection (checked against the Hermite-sum projection).
    """
    if lam == 0.0:
        raise DomainError("radial projection requires lam != 0")
    if n < 2:
        raise DomainError("the Laguerre form of the radial projection needs n >= 2")
    la = abs(lam)
    if r_max is None:
        r_max = (math.sqrt(2 * (2 * k + n) / la) + 12.0 / math.sqrt(la))
    nodes, weights = np.polynomial.legendre.leggauss(r_points)
    r = 0.5 * r_max * (nodes + 1.0)
    wr = 0.5 * r_max * weights
    lag = laguerre_ladder(k, n / 2.0 - 1.0, la * r * r)[k]
    sphere = 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)
    vals = np.asarray(phi(r), dtype=float)
    integral = sphere * np.sum(wr * vals * lag * np.exp(-la * r * r / 2.0) * r ** (n - 1))
    const = (math.gamma(k + 1) * math.gamma(n / 2.0)
             / (math.gamma(k + n / 2.0) * math.pi ** (n / 2.0)))
    return float(const * la ** (n / 2.0) * integral)


def radial_projection_laguerre(phi_xy, k: int, lam: float, n: int = 2,
                               asymmetry_tol: float = 1e-8):
    """P_{2k}(lam) of a radial function in Laguerre form.

    ``phi_xy`` is a callable of the n coordinates; it is sampled for radial
    symmetry first (DomainError beyond ``asymmetry_tol``). Returns
    (projected_profile, R_2k) with projected_profile(r) =
    R_2k · L_k^{n/2-1}(|lam| r²) e^{-|lam| r²/2}; the odd projections
    P_{2k+1} of radial input vanish identically.
    """
    check_radial(phi_xy, n, tol=asymmetry_tol)

    def profile(r):
        r = np.asarray(r, dtype=float)
        return phi_xy(r, *([np.zeros_like(r)] * (n - 1)))

    R = radial_projection_coefficient(profile, k, lam, n)
    la = abs(lam)

    def projected(r):
        r = np.asarray(r, dtype=float)
        lag = laguerre_ladder(k, n / 2.0 - 1.0, la * r * r)[k]
        return R * lag * np.exp(-la * r * r / 2.0)

    return projected, R


def check_radial(phi_xy, n: int, tol: float = 1e-8, samples: int = 64, box: float = 3.0):
    """Raise DomainError when a callable of n coordinates is not radially symmetric.

    Compares phi at sampled points against phi at (|x|, 0, ..., 0).
    """
    rng = np.random.default_rng(12345)
    pts = rng.uniform(-box, box, size=(samples, n))
    base = np.asarray(phi_xy(*pts.T), dtype=complex)
    radii = np.sqrt(np.sum(pts * pts, axis=1))
    axis = np.asarray(phi_xy(radii, *([np.zeros(samples)] * (n - 1))), dtype=complex)
    scale = np.max(np.abs(base)) + 1e-300
    if np.max(np.abs(base - axis)) > tol * scale:
        raise DomainError("input is not radial (sampled asymmetry beyond tolerance)")


def hermite_cross_gram(kmax: int = 64) -> np.ndarray:
    """Table r[k,l] = (max(k,l)+1) · |<Phi_k^{a_k}, Phi_l^{a_l}>| / sqrt((2k+1)(2l+1)), n = 1.

    a_k = 1/(2k+1); the claim under test is that r stays bounded by a single
    constant. Inner products by fine trapezoid on the common Gaussian decay.
    """
    xs = np.linspace(-160.0, 160.0, 2 ** 14 + 1)
    dx = xs[1] - xs[0]
    funcs = []
    for k in range(kmax + 1):
        ak = 1.0 / (2 * k + 1)
        scaled = ak ** 0.25 * hermite_ladder(k, math.sqrt(ak) * xs)[k]
        funcs.append(scaled)
    funcs = np.asarray(funcs)
    gram = np.abs(funcs @ funcs.T) * dx
    ks = np.arange(kmax + 1)
    norm = np.sqrt(np.outer(2 * ks + 1, 2 * ks + 1))
    ratio = gram / norm * (np.maximum.outer(ks, ks) + 1.0)
    return ratio
