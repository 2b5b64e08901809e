"""Evaluable fields on R^{n+1} = (x, t) and R^{n+2} = (x, t, s), plus test-data factories.

A Field wraps a numpy-broadcasting evaluator f(x1, ..., xn, t[, s]) together
with the decay metadata the transforms need to control truncation error:
``gaussian`` fields may be integrated on Gauss-Hermite/Gaussian-sized boxes,
``compact`` fields carry a support ball, and ``generic`` fields are refused by
the transforms (truncation error would be uncontrolled).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError

GAUSSIAN = "gaussian"
COMPACT = "compact"
GENERIC = "generic"


@dataclass(frozen=True)
class Field:
    """Complex-valued field on (x_1..x_n, t) or (x_1..x_n, t, s)."""

    evaluator: Callable
    dimension: int = 1  # n
    time_axes: int = 1  # 1 -> (x, t); 2 -> (x, t, s)
    decay_tag: str = GENERIC
    support_radius: float | None = None
    support_center: tuple | None = None

    def __post_init__(self):
        if self.decay_tag not in (GAUSSIAN, COMPACT, GENERIC):
            raise DomainError(f"unknown decay tag {self.decay_tag!r}")
        if self.decay_tag == COMPACT and self.support_radius is None:
            raise DomainError("compact fields must declare a support radius")
        if self.support_radius is not None and not self.support_radius > 0:
            raise DomainError("support radius must be positive")

    def __call__(self, *coords):
        return self.evaluator(*coords)

    @property
    def center(self) -> tuple:
        if self.support_center is not None:
            return self.support_center
        return (0.0,) * (self.dimension + self.time_axes)


def smooth_transition(t):
    """C-infinity step: 0 for t <= 0, 1 for t >= 1."""
    t = np.asarray(t, dtype=float)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        a = np.where(t > 0, np.exp(-1.0 / np.maximum(t, 1e-300)), 0.0)
        b = np.where(t < 1, np.exp(-1.0 / np.maximum(1.0 - t, 1e-300)), 0.0)
    return a / (a + b)


def bump_profile(u):
    """exp(-1/(1-u^2)^2) on (-1, 1), 0 outside.

    The squared pole makes the Fourier transform decay like exp(-c|w|^{2/3}),
    noticeably faster than the classical exp(-1/(1-u^2)) bump; transforms of
    compactly supported test data then converge on desk-scale grids.
    """
    u = np.asarray(u, dtype=float)
    inside = np.abs(u) < 1.0
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        val = np.where(inside, np.exp(-1.0 / np.maximum(1.0 - u * u, 1e-300) ** 2), 0.0)
    return val


def smooth_window(plateau: float = 0.25, support: float = 1.0) -> Callable:
    """Even C-infinity window: 1 on [-plateau, plateau], 0 outside (-support, support), sup = 1."""
    if not 0 < plateau < support:
        raise DomainError("smooth_window needs 0 < plateau < support")

    def psi(x):
        x = np.abs(np.asarray(x, dtype=float))
        t = (support - x) / (support - plateau)
        out = smooth_transition(t)
        return out if out.ndim else float(out)

    return psi


def gaussian_wavepacket(n: int, centers, widths, modulations, amplitude=1.0) -> Field:
    """Gaussian wavepacket on (x, t): A·exp(-sum (c_j-c0_j)^2/(2 w_j^2) + i zeta·c).

    ``centers``, ``widths``, ``modulations`` have length n+1, ordered (x..., t).
    """
    c0 = np.asarray(centers, dtype=float)
    w = np.asarray(widths, dtype=float)
    z = np.asarray(modulations, dtype=float)
    if not (len(c0) == len(w) == len(z) == n + 1):
        raise DomainError("wavepacket parameter vectors must have length n+1")

    def f(*coords):
        acc = 0.0
        for j, c in enumerate(coords):
            c = np.asarray(c, dtype=float)
            acc = acc - (c - c0[j]) ** 2 / (2 * w[j] ** 2) + 1j * z[j] * c
        return amplitude * np.exp(acc)

    return Field(f, dimension=n, time_axes=1, decay_tag=GAUSSIAN)


def gaussian_wavepacket3(n: int, centers, widths, modulations, amplitude=1.0) -> Field:
    """Gaussian wavepacket on (x, t, s); parameter vectors have length n+2."""
    c0 = np.asarray(centers, dtype=float)
    w = np.asarray(widths, dtype=float)
    z = np.asarray(modulations, dtype=float)
    if not (len(c0) == len(w) == len(z) == n + 2):
        raise DomainError("wavepacket parameter vectors must have length n+2")

    def f(*coords):
        acc = 0.0
        for j, c in enumerate(coords):
            c = np.asarray(c, dtype=float)
            acc = acc - (c - c0[j]) ** 2 / (2 * w[j] ** 2) + 1j * z[j] * c
        return amplitude * np.exp(acc)

    return Field(f, dimension=n, time_axes=2, decay_tag=GAUSSIAN)


def bump_field(n: int, center, radius: float, amplitude=1.0) -> Field:
    """Radial C_c-infinity bump in (x, t), supported in the ball B(center, radius)."""
    c0 = np.asarray(center, dtype=float)
    if len(c0) != n + 1:
        raise DomainError("bump center must have length n+1")

    def f(*coords):
        r2 = 0.0
        for j, c in enumerate(coords):
            c = np.asarray(c, dtype=float)
            r2 = r2 + (c - c0[j]) ** 2
        return amplitude * bump_profile(np.sqrt(r2) / radius)

    return Field(f, dimension=n, time_axes=1, decay_tag=COMPACT,
                 support_radius=radius, support_center=tuple(c0))


def plateau_bump_field(n: int, center, radius: float, amplitude=1.0,
                       plateau: float = 0.5) -> Field:
    """Radial plateau bump in (x, t): 1 on half the support ball, smooth falloff.

    Flatter than ``bump_field``, so its Hermite expansions at small |lambda|
    converge with noticeably smaller truncations (the effective width is the
    full support, not the bump core).
    """
    c0 = np.asarray(center, dtype=float)
    if len(c0) != n + 1:
        raise DomainError("bump center must have length n+1")
    w = smooth_window(plateau=plateau, support=1.0)

    def f(*coords):
        r2 = 0.0
        for j, c in enumerate(coords):
            c = np.asarray(c, dtype=float)
            r2 = r2 + (c - c0[j]) ** 2
        return amplitude * w(np.sqrt(r2) / radius)

    return Field(f, dimension=n, time_axes=1, decay_tag=COMPACT,
                 support_radius=radius, support_center=tuple(c0))


def ground_mode_field(q_lo: float, q_hi: float, gl_nodes: int = 240) -> Field:
    """The translating datum: f(x,t) = (2π)^{-1} ∫ Q(lam) e^{-i lam t} Phi_0^lam(x) dlam.

    Q is the standard profile supported in (q_lo, q_hi) with q_lo > 1; the
    free Schrödinger flow moves this field rigidly: u(x,t,s) = f(x, t+ns).
    Evaluation is by Gauss-Legendre quadrature over supp Q (n = 1).
    """
    if q_lo <= 1.0:
        raise DomainError("the profile support must stay inside (1, inf)")
    Q = lambda_bump(q_lo, q_hi)
    nodes, weights = np.polynomial.legendre.leggauss(gl_nodes)
    lam = 0.5 * (q_hi - q_lo) * nodes + 0.5 * (q_hi + q_lo)
    w = 0.5 * (q_hi - q_lo) * weights * Q(lam)

    def f(x, t):
        x = np.asarray(x, dtype=float)
        t = np.asarray(t, dtype=float)
        shape = np.broadcast(x, t).shape
        xf = np.broadcast_to(x, shape).ravel()
        tf = np.broadcast_to(t, shape).ravel()
        phi0 = lam[:, None] ** 0.25 * np.pi ** -0.25 * np.exp(-0.5 * lam[:, None] * xf[None, :] ** 2)
        val = (w[:, None] * phi0 * np.exp(-1j * np.outer(lam, tf))).sum(axis=0) / (2 * np.pi)
        return val.reshape(shape)

    return Field(f, dimension=1, time_axes=1, decay_tag=GAUSSIAN)


def lambda_bump(lo: float, hi: float) -> Callable:
    """C_c-infinity profile Q supported in (lo, hi), peak value 1."""
    if not hi > lo:
        raise DomainError("lambda_bump needs hi > lo")
    mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
    peak = 1.0 / bump_profile(0.0)

    def q(lam):
        return peak * bump_profile((np.asarray(lam, dtype=float) - mid) / half)

    return q


def wavepacket_family(rng: np.random.Generator, count: int, n: int = 1,
                      time_axes: int = 1) -> list[Field]:
    """Seeded family of Gaussian wavepackets with bounded centers/modulations/dilations.

    x-modulations stay within ±1 so the Hermite expansions at the smallest
    grid |lambda| converge within desk-scale truncations; the t/s axes are
    handled by exact discrete Fourier steps and tolerate larger modulations.
    """
    fields = []
    m = n + time_axes
    for _ in range(count):
        centers = np.concatenate([rng.uniform(-1.2, 1.2, size=n),
                                  rng.uniform(-1.5, 1.5, size=time_axes)])
        widths = rng.uniform(0.85, 1.3, size=m)
        mods = np.concatenate([rng.uniform(-1.0, 1.0, size=n),
                               rng.uniform(-2.0, 2.0, size=time_axes)])
        amp = rng.uniform(0.5, 2.0)
        maker = gaussian_wavepacket if time_axes == 1 else gaussian_wavepacket3
        fields.append(maker(n, centers, widths, mods, amplitude=amp))
    return fields
