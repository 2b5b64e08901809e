"""Scaled Hermite-Fourier transform on R^{n+1} and R^{n+2}.

Forward transform:  fhat(alpha, lam) = <f^lam, Phi_alpha^lam>, with
f^lam(x) = ∫ f(x,t) e^{i lam t} dt on the uniform t-grid conjugate to the
midpoint lambda-grid, and the x inner product by Gauss-Hermite quadrature at
nodes scaled by |lam|^{-1/2} (gaussian fields) or by a uniform grid on the
declared support (compact fields).

Inversion:  f(x,t) = (2π)^{-1} ∫ e^{-i lam t} Σ_alpha fhat(alpha,lam)
Phi_alpha^lam(x) dlam, discretized with the lambda-grid weights. With the
conjugate grid pairing, forward and inverse are numerically exact adjoints on
the grid, and the squared-norm Plancherel identity ‖f‖₂² = (2π)^{-1}‖fhat‖₂²
(resp. (2π)^{-2} on R^{n+2}) holds to quadrature accuracy.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from functools import cached_property

import numpy as np

from . import fields as flds
from .errors import DomainError, ParameterError
from .grids import LambdaGrid, UniformGrid, gauss_hermite_rule
from .hermite import hermite_ladder, multi_indices


@dataclass(frozen=True)
class TransformGrid:
    """Resolution parameters for the (x, t) <-> (alpha, lambda) transform."""

    dimension: int = 1
    max_degree: int = 128
    lambda_spacing: float = math.pi / 12.0
    lambda_half_count: int = 128
    hermite_order: int = 192
    support_points: int = 192  # per-axis nodes for compact-support inner products

    def __post_init__(self):
        if self.dimension < 1:
            raise ParameterError("dimension must be >= 1")
        if self.hermite_order <= self.max_degree:
            raise ParameterError("hermite_order must exceed max_degree for exact Gram")

    @cached_property
    def lambda_grid(self) -> LambdaGrid:
        return LambdaGrid(self.lambda_half_count, self.lambda_spacing)

    @cached_property
    def time_grid(self) -> UniformGrid:
        return self.lambda_grid.conjugate_time_grid()

    @cached_property
    def indices(self):
        return multi_indices(self.dimension, self.max_degree)[0]

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.asarray(multi_indices(self.dimension, self.max_degree)[1])

    def describe(self) -> dict:
        return {
            "dimension": self.dimension,
            "max_degree": self.max_degree,
            "lambda_spacing": self.lambda_spacing,
            "lambda_half_count": self.lambda_half_count,
            "hermite_order": self.hermite_order,
            "support_points": self.support_points,
        }


def default_grid(n: int = 1, **overrides) -> TransformGrid:
    """Desk-scale defaults: K = 128 for n = 1, K = 32 (total degree) for n = 2."""
    base = dict(dimension=n, max_degree=128 if n == 1 else 32,
                hermite_order=192 if n == 1 else 64)
    base.update(overrides)
    return TransformGrid(**base)


@dataclass
class SpectralCoefficients:
    """fhat(alpha, lam_j) on the truncated index set, shape (n_alpha, n_lambda)."""

    dimension: int
    max_degree: int
    lambda_grid: LambdaGrid
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        expected = (len(self.indices), self.lambda_grid.count)
        if self.values.shape != expected:
            raise ParameterError(f"values shape {self.values.shape} != {expected}")
        if not np.all(np.isfinite(self.values)):
            raise ParameterError("coefficient array contains non-finite entries")

    @property
    def indices(self):
        return multi_indices(self.dimension, self.max_degree)[0]

    @property
    def degrees(self) -> np.ndarray:
        return np.asarray(multi_indices(self.dimension, self.max_degree)[1])

    def eigenvalues(self) -> np.ndarray:
        """(2|alpha| + n)|lam| on the (alpha, lambda) tensor."""
        return (2 * self.degrees[:, None] + self.dimension) * np.abs(self.lambda_grid.nodes)[None, :]

    def l2_norm(self) -> float:
        """Norm in L^2(N_0^n x R*): sqrt(Σ_alpha ∫ |fhat|² dlam)."""
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2) * self.lambda_grid.spacing))

    def with_values(self, values) -> "SpectralCoefficients":
        return SpectralCoefficients(self.dimension, self.max_degree, self.lambda_grid, values)

    @classmethod
    def zeros(cls, grid: TransformGrid) -> "SpectralCoefficients":
        shape = (len(grid.indices), grid.lambda_grid.count)
        return cls(grid.dimension, grid.max_degree, grid.lambda_grid, np.zeros(shape, dtype=complex))

    # -- serialization (self-describing JSON container) ---------------------
    def to_dict(self) -> dict:
        return {
            "n": self.dimension,
            "K": self.max_degree,
            "lambda_grid": {"half_count": self.lambda_grid.half_count,
                            "spacing": self.lambda_grid.spacing},
            "values": {"real": self.values.real.tolist(),
                       "imag": self.values.imag.tolist()},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SpectralCoefficients":
        grid = LambdaGrid(data["lambda_grid"]["half_count"], data["lambda_grid"]["spacing"])
        values = np.asarray(data["values"]["real"]) + 1j * np.asarray(data["values"]["imag"])
        return cls(data["n"], data["K"], grid, values)

    def save(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh)

    @classmethod
    def load(cls, path) -> "SpectralCoefficients":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def _require_decay(f: flds.Field):
    if f.decay_tag == flds.GENERIC and f.support_radius is None:
        raise DomainError(
            "refusing to transform a field with neither decay tag nor support radius: "
            "truncation error would be uncontrolled"
        )


def _gl_axis(lo: float, hi: float, min_points: int, order: int = 16):
    xs, ws = np.polynomial.legendre.leggauss(order)
    n_panels = max(4, int(math.ceil(min_points / order)))
    edges = np.linspace(lo, hi, n_panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])[:, None]
    half = 0.5 * (edges[1:] - edges[:-1])[:, None]
    return (mid + half * xs[None, :]).ravel(), (half * np.broadcast_to(ws, (n_panels, order))).ravel()


def _x_quadrature(f: flds.Field, grid: TransformGrid, lam_abs: float):
    """Per-|lambda| x-nodes and plain-dx weights for the inner products."""
    if f.decay_tag == flds.COMPACT:
        # composite Gauss-Legendre on the support box: the basis oscillates at
        # frequency sqrt(lam (2K+n)), so the node count must track it
        c = f.center
        r = f.support_radius
        freq = math.sqrt(lam_abs * (2 * grid.max_degree + grid.dimension))
        needed = max(grid.support_points, int(freq * 2 * r * 1.6) + 32)
        axes = []
        for j in range(grid.dimension):
            nodes, weights = _gl_axis(c[j] - r, c[j] + r, needed)
            axes.append((nodes, weights))
        return axes
    rule = gauss_hermite_rule(grid.hermite_order)
    root = math.sqrt(lam_abs)
    nodes = rule.nodes / root
    weights = rule.du_weights / root
    return [(nodes, weights)] * grid.dimension


def _basis_rows(grid: TransformGrid, lam_abs: float, axes):
    """Matrix Phi_alpha^lam over tensor x-nodes: shape (n_alpha, prod N_j)."""
    root = math.sqrt(lam_abs)
    ladders = [hermite_ladder(grid.max_degree, root * nodes) for nodes, _ in axes]
    scale = lam_abs ** (grid.dimension / 4.0)
    alphas = grid.indices
    if grid.dimension == 1:
        return scale * ladders[0]
    rows = np.empty((len(alphas), axes[0][0].size * axes[1][0].size))
    for r, (a1, a2) in enumerate(alphas):
        rows[r] = scale * np.outer(ladders[0][a1], ladders[1][a2]).ravel()
    return rows


def forward_transform(f: flds.Field, grid: TransformGrid | None = None) -> SpectralCoefficients:
    """Scaled Hermite-Fourier transform of a field on (x, t)."""
    if grid is None:
        grid = default_grid(f.dimension)
    if f.time_axes != 1 or f.dimension != grid.dimension:
        raise ParameterError("forward_transform expects a (x, t) field matching the grid dimension")
    _require_decay(f)
    lam = grid.lambda_grid.nodes
    tg = grid.time_grid
    t_nodes, dt = tg.nodes, tg.spacing
    if f.decay_tag == flds.COMPACT:
        keep = np.abs(t_nodes - f.center[-1]) <= f.support_radius + dt
        t_nodes = t_nodes[keep]
    out = np.empty((len(grid.indices), lam.size), dtype=complex)
    half = grid.lambda_grid.half_count
    for jpos in range(half):
        lam_abs = (jpos + 0.5) * grid.lambda_grid.spacing
        axes = _x_quadrature(f, grid, lam_abs)
        mesh = np.meshgrid(*[nodes for nodes, _ in axes], indexing="ij")
        flat = [m.ravel() for m in mesh]
        samples = np.asarray(
            f(*[c[:, None] for c in flat], t_nodes[None, :]), dtype=complex
        )  # (Nx_flat, Nt)
        wx = np.ones(flat[0].size)
        for j, (_, weights) in enumerate(axes):
            sh = [1] * len(axes)
            sh[j] = weights.size
            wx = wx * np.broadcast_to(weights.reshape(sh),
                                      tuple(n.size for n, _ in axes)).ravel()
        basis = _basis_rows(grid, lam_abs, axes) * wx[None, :]
        for sign, col in ((1.0, half + jpos), (-1.0, half - 1 - jpos)):
            phase = np.exp(1j * sign * lam_abs * t_nodes) * dt
            f_lam = samples @ phase  # (Nx_flat,)
            out[:, col] = basis @ f_lam
    return SpectralCoefficients(grid.dimension, grid.max_degree, grid.lambda_grid, out)


def synthesize_xt(c: SpectralCoefficients, x_axes, t_nodes,
                  s_phase=None) -> np.ndarray:
    """Evaluate the inversion sum on a tensor grid.

    Returns (2π)^{-1} Σ_j w_j e^{-i lam_j t} Σ_alpha M(alpha, lam_j)
    c(alpha, lam_j) Phi_alpha^{lam_j}(x) with samples shaped (Nt, Nx1(, Nx2)).
    ``x_axes`` is a list of per-axis node arrays. ``s_phase``, when given, is a
    callable (degrees, lam) -> per-alpha multiplier (used by the propagators).
    """
    t_nodes = np.asarray(t_nodes, dtype=float)
    x_axes = [np.asarray(a, dtype=float) for a in x_axes]
    lam = c.lambda_grid.nodes
    w = c.lambda_grid.spacing
    deg = c.degrees
    nshape = tuple(a.size for a in x_axes)
    out = np.zeros((t_nodes.size,) + nshape, dtype=complex)
    for j, lj in enumerate(lam):
        la = abs(lj)
        root = math.sqrt(la)
        vals = c.values[:, j]
        if s_phase is not None:
            vals = vals * s_phase(deg, lj)
        if not np.any(vals):
            continue
        scale = la ** (c.dimension / 4.0)
        ladders = [hermite_ladder(c.max_degree, root * a) for a in x_axes]
        if c.dimension == 1:
            profile = scale * (vals @ ladders[0])  # (Nx,)
        else:
            D = np.zeros((c.max_degree + 1, c.max_degree + 1), dtype=complex)
            for (a1, a2), v in zip(c.indices, vals):
                D[a1, a2] = v
            profile = scale * (ladders[0].T @ D @ ladders[1])
        phase = np.exp(-1j * lj * t_nodes) * w
        out += phase.reshape((-1,) + (1,) * len(nshape)) * profile[np.newaxis, ...]
    return out / (2.0 * math.pi)


def synthesize_spacetime(c: SpectralCoefficients, x_axes, t_nodes, s_nodes,
                         mode_multiplier) -> np.ndarray:
    """Evaluate a diagonal-multiplier evolution on a (t, s, x...) tensor grid.

    ``mode_multiplier(degrees, lam, s_nodes)`` returns an (n_alpha, n_s) array;
    for the Schrödinger flow it is exp(-i s (2|alpha|+n)|lam|). Result shape:
    (Nt, Ns, Nx1(, Nx2)).
    """
    t_nodes = np.asarray(t_nodes, dtype=float)
    s_nodes = np.asarray(s_nodes, dtype=float)
    x_axes = [np.asarray(a, dtype=float) for a in x_axes]
    lam = c.lambda_grid.nodes
    w = c.lambda_grid.spacing
    deg = c.degrees
    nshape = tuple(a.size for a in x_axes)
    out = np.zeros((t_nodes.size, s_nodes.size) + nshape, dtype=complex)
    occupied = np.flatnonzero(np.any(c.values != 0, axis=1))
    if occupied.size == 0:
        return out
    indices = c.indices
    for j, lj in enumerate(lam):
        la = abs(lj)
        root = math.sqrt(la)
        base = c.values[:, j]
        if not np.any(base):
            continue
        mult = np.asarray(mode_multiplier(deg[occupied], lj, s_nodes), dtype=complex)  # (No, Ns)
        vals = base[occupied, None] * mult
        scale = la ** (c.dimension / 4.0)
        ladders = [hermite_ladder(c.max_degree, root * a) for a in x_axes]
        if c.dimension == 1:
            profile = scale * np.einsum("as,ax->sx", vals, ladders[0][occupied])
        else:
            profile = np.zeros((s_nodes.size,) + nshape, dtype=complex)
            for row, r in enumerate(occupied):
                a1, a2 = indices[r]
                profile += vals[row][:, None, None] * np.multiply.outer(ladders[0][a1], ladders[1][a2])
            profile *= scale
        phase = np.exp(-1j * lj * t_nodes) * w
        out += phase.reshape((-1, 1) + (1,) * len(nshape)) * profile[np.newaxis, ...]
    return out / (2.0 * math.pi)


def inverse_transform(c: SpectralCoefficients) -> flds.Field:
    """Field evaluator for the inversion formula (valid inside the conjugate t-box)."""

    def f(*coords):
        *xs, t = [np.asarray(a, dtype=float) for a in coords]
        shape = np.broadcast(*coords).shape
        xs = [np.broadcast_to(a, shape).ravel() for a in xs]
        t = np.broadcast_to(t, shape).ravel()
        lam = c.lambda_grid.nodes
        w = c.lambda_grid.spacing
        acc = np.zeros(t.size, dtype=complex)
        for j, lj in enumerate(lam):
            vals = c.values[:, j]
            if not np.any(vals):
                continue
            la = abs(lj)
            root = math.sqrt(la)
            scale = la ** (c.dimension / 4.0)
            ladders = [hermite_ladder(c.max_degree, root * a) for a in xs]
            prof = np.zeros(t.size, dtype=complex)
            for alpha, v in zip(c.indices, vals):
                term = np.ones(t.size)
                for jj, kj in enumerate(alpha):
                    term = term * ladders[jj][kj]
                prof += v * term
            acc += np.exp(-1j * lj * t) * w * scale * prof
        return (acc / (2.0 * math.pi)).reshape(shape)

    return flds.Field(f, dimension=c.dimension, time_axes=1, decay_tag=flds.GAUSSIAN)


def apply_G_spectral(c: SpectralCoefficients) -> SpectralCoefficients:
    """Transform-side Grushin operator: multiply by (2|alpha| + n)|lam|."""
    return c.with_values(c.values * c.eigenvalues())


# ---------------------------------------------------------------------------
# the R^{n+2} variant, with an extra (s <-> nu) Fourier axis
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TransformGrid3(TransformGrid):
    """TransformGrid plus the conjugate (s, nu) axis."""

    nu_spacing: float = math.pi / 12.0
    nu_half_count: int = 64

    @cached_property
    def nu_grid(self) -> LambdaGrid:
        return LambdaGrid(self.nu_half_count, self.nu_spacing)

    @cached_property
    def s_grid(self) -> UniformGrid:
        return self.nu_grid.conjugate_time_grid()

    def describe(self) -> dict:
        d = super().describe()
        d.update({"nu_spacing": self.nu_spacing, "nu_half_count": self.nu_half_count})
        return d


@dataclass
class SpectralCoefficients3:
    """fhat(alpha, lam_j, nu_m), shape (n_alpha, n_lambda, n_nu)."""

    dimension: int
    max_degree: int
    lambda_grid: LambdaGrid
    nu_grid: LambdaGrid
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        expected = (len(multi_indices(self.dimension, self.max_degree)[0]),
                    self.lambda_grid.count, self.nu_grid.count)
        if self.values.shape != expected:
            raise ParameterError(f"values shape {self.values.shape} != {expected}")

    @property
    def degrees(self) -> np.ndarray:
        return np.asarray(multi_indices(self.dimension, self.max_degree)[1])

    def l2_norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2)
                             * self.lambda_grid.spacing * self.nu_grid.spacing))


def forward_transform2(f: flds.Field, grid: TransformGrid3) -> SpectralCoefficients3:
    """Scaled Hermite-Fourier transform of a field on (x, t, s)."""
    if f.time_axes != 2 or f.dimension != grid.dimension:
        raise ParameterError("forward_transform2 expects a (x, t, s) field matching the grid")
    _require_decay(f)
    tg, sg = grid.time_grid, grid.s_grid
    nu = grid.nu_grid.nodes
    lam = grid.lambda_grid.nodes
    half = grid.lambda_grid.half_count
    s_phase = np.exp(1j * np.outer(sg.nodes, nu)) * sg.spacing  # (Ns, Nnu)
    out = np.empty((len(grid.indices), lam.size, nu.size), dtype=complex)
    for jpos in range(half):
        lam_abs = (jpos + 0.5) * grid.lambda_grid.spacing
        axes = _x_quadrature(f, grid, lam_abs)
        mesh = np.meshgrid(*[nodes for nodes, _ in axes], indexing="ij")
        flat = [m.ravel() for m in mesh]
        samples = np.asarray(
            f(*[cc[:, None, None] for cc in flat], tg.nodes[None, :, None],
              sg.nodes[None, None, :]), dtype=complex)  # (Nx_flat, Nt, Ns)
        snu = samples @ s_phase  # (Nx_flat, Nt, Nnu)
        wx = np.ones(flat[0].size)
        for j, (_, weights) in enumerate(axes):
            sh = [1] * len(axes)
            sh[j] = weights.size
            wx = wx * np.broadcast_to(weights.reshape(sh),
                                      tuple(n.size for n, _ in axes)).ravel()
        basis = _basis_rows(grid, lam_abs, axes) * wx[None, :]
        for sign, col in ((1.0, half + jpos), (-1.0, half - 1 - jpos)):
            phase = np.exp(1j * sign * lam_abs * tg.nodes) * tg.spacing  # (Nt,)
            f_lam = np.einsum("xtv,t->xv", snu, phase)
            out[:, col, :] = basis @ f_lam
    return SpectralCoefficients3(grid.dimension, grid.max_degree,
                                 grid.lambda_grid, grid.nu_grid, out)
