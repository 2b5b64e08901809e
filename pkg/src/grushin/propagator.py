"""Spectral evolution operators: Schrödinger, heat, wave, frequency localization, Duhamel.

All free evolutions are diagonal multipliers on the (alpha, lambda) tensor:

    schrodinger:  exp(-i s (2|alpha|+n)|lam|)
    heat:         exp(-s (2|alpha|+n)|lam|),  s >= 0
    wave:         cos(s w) fhat + sin(s w)/w ghat,  w = sqrt((2|alpha|+n)|lam|)

so unitarity, the group law, and commutation with frequency localization hold
at the level of multiplier arithmetic. The inhomogeneous problems use the
variation-of-constants formula with composite Simpson in the time variable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, ParameterError
from .fields import smooth_window
from .transform import SpectralCoefficients


@dataclass(frozen=True)
class LocalizationWindow:
    """Spectral cutoff profile: psi smooth, even, supp in (-1,1), psi(0)=1, |psi| <= 1."""

    psi: Callable
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ParameterError("localization radius must be positive")
        probe = np.linspace(-3.0, 3.0, 241)
        vals = np.asarray(self.psi(probe), dtype=float)
        if abs(float(self.psi(0.0)) - 1.0) > 1e-12:
            raise ParameterError("window must satisfy psi(0) = 1")
        if np.any(np.abs(vals) > 1.0 + 1e-12):
            raise ParameterError("window must satisfy |psi| <= 1")
        if np.any(np.abs(vals[np.abs(probe) >= 1.0]) > 0.0):
            raise ParameterError("window must vanish for |x| >= 1")
        even = np.asarray(self.psi(-probe), dtype=float)
        if np.max(np.abs(vals - even)) > 1e-12:
            raise ParameterError("window must be even")

    @classmethod
    def default(cls, radius: float) -> "LocalizationWindow":
        return cls(psi=smooth_window(plateau=0.25, support=1.0), radius=radius)

    def describe(self) -> str:
        return f"smooth even bump, psi=1 on [-1/4,1/4], supp (-1,1), R={self.radius!r}"


def schrodinger_evolve(c: SpectralCoefficients, s: float) -> SpectralCoefficients:
    """e^{-isG}: multiply each mode by exp(-i s (2|alpha|+n)|lam|)."""
    return c.with_values(c.values * np.exp(-1j * s * c.eigenvalues()))


def heat_evolve(c: SpectralCoefficients, s: float) -> SpectralCoefficients:
    """e^{-sG} for s >= 0 (backward heat is refused)."""
    if s < 0:
        raise DomainError(f"heat evolution requires s >= 0, got {s}")
    return c.with_values(c.values * np.exp(-s * c.eigenvalues()))


def omega(c: SpectralCoefficients) -> np.ndarray:
    """sqrt((2|alpha|+n)|lam|); strictly positive on every grid node."""
    return np.sqrt(c.eigenvalues())


def wave_evolve(f_hat: SpectralCoefficients, g_hat: SpectralCoefficients,
                s: float) -> SpectralCoefficients:
    """Solution multiplier of u_ss + Gu = 0: cos(sw) fhat + sin(sw)/w ghat."""
    w = omega(f_hat)
    return f_hat.with_values(np.cos(s * w) * f_hat.values
                             + np.sin(s * w) / w * g_hat.values)


def wave_velocity(f_hat: SpectralCoefficients, g_hat: SpectralCoefficients,
                  s: float) -> SpectralCoefficients:
    """d/ds of the wave solution: -w sin(sw) fhat + cos(sw) ghat."""
    w = omega(f_hat)
    return f_hat.with_values(-w * np.sin(s * w) * f_hat.values
                             + np.cos(s * w) * g_hat.values)


def wave_half_split(f_hat: SpectralCoefficients,
                    g_hat: SpectralCoefficients) -> tuple[SpectralCoefficients, SpectralCoefficients]:
    """Half-wave data phi_± = (fhat ± i ghat/w)/2, so that
    u = e^{-isw} phi_+ + e^{+isw} phi_- solves u(0) = f, u_s(0) = g.

    (The opposite relative sign would propagate -g as the initial velocity:
    d/ds at 0 gives -i w (phi_+ - phi_-) = g only for this choice.)
    """
    w = omega(f_hat)
    half_g = g_hat.values / w
    phi_plus = f_hat.with_values(0.5 * (f_hat.values + 1j * half_g))
    phi_minus = f_hat.with_values(0.5 * (f_hat.values - 1j * half_g))
    return phi_plus, phi_minus


def wave_energy(f_hat: SpectralCoefficients, g_hat: SpectralCoefficients, s: float) -> float:
    """Spectral energy ||w u(s)||² + ||d/ds u(s)||² (lambda-weighted)."""
    w = omega(f_hat)
    u = wave_evolve(f_hat, g_hat, s)
    v = wave_velocity(f_hat, g_hat, s)
    dl = f_hat.lambda_grid.spacing
    return float(np.sum(np.abs(w * u.values) ** 2 + np.abs(v.values) ** 2) * dl)


def frequency_localize(c: SpectralCoefficients,
                       window: LocalizationWindow) -> SpectralCoefficients:
    """psi(R^{-2} G) cutoff; modes with (2|alpha|+n)|lam| >= R² vanish exactly."""
    arg = c.eigenvalues() / window.radius**2
    factor = np.asarray(window.psi(arg), dtype=float)
    factor = np.where(arg >= 1.0, 0.0, factor)
    return c.with_values(c.values * factor)


def _simpson_weights(n_panels: int, h: float) -> np.ndarray:
    w = np.ones(n_panels + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w * (h / 3.0)


def duhamel_solve(f_hat: SpectralCoefficients, forcing: Callable[[float], np.ndarray],
                  s_grid, n_panels: int = 64) -> list[SpectralCoefficients]:
    """Inhomogeneous Schrödinger solve u(s) = e^{-isG}fhat - i ∫₀ˢ e^{-i(s-s')G} g(s') ds'.

    ``forcing(s)`` returns the coefficient array of g(·, ·, s). The time
    integral uses composite Simpson with ``n_panels`` (even, >= 2) panels per
    requested s, so the error is O(Δs⁴) for smooth forcing.
    """
    s_grid = list(s_grid)
    if sorted(s_grid) != s_grid:
        raise ParameterError("s_grid must be sorted ascending")
    if n_panels < 2 or n_panels % 2:
        raise ParameterError("Simpson integration needs an even panel count >= 2 (3+ nodes)")
    mu = f_hat.eigenvalues()
    out = []
    for s in s_grid:
        if s == 0.0:
            out.append(f_hat.with_values(f_hat.values.copy()))
            continue
        nodes = np.linspace(0.0, s, n_panels + 1)
        weights = _simpson_weights(n_panels, s / n_panels)
        acc = np.zeros_like(f_hat.values)
        for sp, wgt in zip(nodes, weights):
            acc = acc + wgt * np.exp(1j * sp * mu) * np.asarray(forcing(sp), dtype=complex)
        out.append(f_hat.with_values(np.exp(-1j * s * mu) * (f_hat.values - 1j * acc)))
    return out


def duhamel_wave_solve(f_hat: SpectralCoefficients, g_hat: SpectralCoefficients,
                       forcing: Callable[[float], np.ndarray], s_grid,
                       n_panels: int = 64) -> list[SpectralCoefficients]:
    """Inhomogeneous wave solve: free wave flow plus ∫₀ˢ sin((s-s')w)/w h(s') ds'."""
    s_grid = list(s_grid)
    if sorted(s_grid) != s_grid:
        raise ParameterError("s_grid must be sorted ascending")
    if n_panels < 2 or n_panels % 2:
        raise ParameterError("Simpson integration needs an even panel count >= 2 (3+ nodes)")
    w = omega(f_hat)
    out = []
    for s in s_grid:
        free = wave_evolve(f_hat, g_hat, s)
        if s == 0.0:
            out.append(free)
            continue
        nodes = np.linspace(0.0, s, n_panels + 1)
        weights = _simpson_weights(n_panels, s / n_panels)
        acc = np.zeros_like(f_hat.values)
        for sp, wgt in zip(nodes, weights):
            acc = acc + wgt * np.sin((s - sp) * w) / w * np.asarray(forcing(sp), dtype=complex)
        out.append(free.with_values(free.values + acc))
    return out
