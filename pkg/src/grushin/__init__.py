"""Numerical spectral toolkit for the Grushin operator G = -Δ - |x|²∂t²."""

__version__ = "0.1.0"

from .errors import (ConfigurationError, CoverageError, DomainError, EvaluationError,
                     GrushinError, ParameterError, StripConditionError)
from .fields import Field, bump_field, gaussian_wavepacket, gaussian_wavepacket3, lambda_bump
from .grids import (Ball, GaussHermiteRule, LambdaGrid, MixedNormSpec, UniformGrid,
                    ball_lp_norm, gauss_hermite_rule, mixed_norm)
from .hermite import (HermiteBasis, LaguerreBasis, hermite_eval, laguerre_eval,
                      projection_apply, scaled_hermite_eval)
from .kernels import (KernelQuadratureConfig, StripKernelQuery, dispersive_constant,
                      heat_kernel_mehler, heat_kernel_mehler_rescaled, heat_kernel_series,
                      kernel_propagate, schrodinger_kernel_strip)
from .propagator import (LocalizationWindow, duhamel_solve, duhamel_wave_solve,
                         frequency_localize, heat_evolve, schrodinger_evolve,
                         wave_evolve, wave_velocity)
from .surfaces import (LocalizedMeasure, Surface, SurfaceDensity, extend,
                       pushforward_density, radial_projection_laguerre, restrict,
                       surface_l2_norm)
from .transform import (SpectralCoefficients, TransformGrid, TransformGrid3,
                        apply_G_spectral, default_grid, forward_transform,
                        forward_transform2, inverse_transform)
