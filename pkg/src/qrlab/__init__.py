"""Numerical toolkit for Riesz-type inequalities of harmonic quasiregular maps.

Modules
-------
analytic_core      power series, principal powers, the sector family
planar_harmonic    harmonic maps ``f = g + conj(h)`` of the disk
ball_harmonic      linear maps of the ball, Poisson kernel, Green function
quadrature         circle, disk, sphere and ball rules
zero_adapted       rules adapted to the zero set of ``Re F``
constants          closed-form constants of the inequalities
identities         Laplacian formulas and Green identities
harness            verification reports and the acceptance suite
cli                command-line front end
"""

from .analytic_core import ComplexSeries, principal_power, sector_boundary_value, sector_map, sector_series
from .ball_harmonic import LinearBallMap, green_function, poisson_kernel, qr_constant_linear, singular_norms
from .constants import (all_constants, c_theorem1, c_theorem2, classical_constants, d_theorem2,
                        initial_condition_ok, pichorides_AB, verbitsky_CD)
from .errors import QrlabError
from .harness import (VerificationReport, check_theorem1_ball, check_theorem1_plane, check_theorem2,
                      equality_case_identity, random_qr_family, run_suite, sharpness_probe)
from .identities import (RegularizationSchedule, eps_monotonicity_check, finite_diff_laplacian,
                         green_identity_residual_plane, green_representation_residual)
from .planar_harmonic import PlanarHarmonicMap, dilatation, make_qr_map, qr_bound
from .quadrature import QuadratureSpec, circle_mean, disk_green_integral, hardy_norm, sphere_mean_3d

__version__ = "0.1.0"
