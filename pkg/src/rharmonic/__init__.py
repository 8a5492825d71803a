"""
rharmonic
=========

Explicit proper r-harmonic functions on the upper half-space, the
hyperboloid and the round sphere, with exact and jet-based verification.

Submodules
----------
jets       truncated multivariate Taylor arithmetic over complex numbers
geometry   metric charts, Laplace-Beltrami and flat operators on jets
logpoly    exact algebra on sums of t^k log(t)^m
families   harmonic seeds and the field constructions
lift       radial projections and ambient lift identities
verify     sampling, verification reports, finite differences, grid export
"""

from .families import (FamilySpec, HarmonicSeed, get_seed, hyperboloid_field, phi_map,
                       psi_isometry, seed_catalog, sphere_field, upper_half_field)
from .geometry import (MetricChart, ScalarField, dalembert, euclidean_chart, iterated_tension,
                       laplace_beltrami, stereographic_sphere_chart, upper_half_chart)
from .jets import DomainError, Jet, extract_partial, jet_variable
from .lift import LiftReport, check_lift_hyperbolic, check_lift_sphere, project_hyperbolic, project_sphere
from .logpoly import LogPolynomial, build_pr, integral_operator, tension_1d
from .verify import SamplePlan, Tolerances, VerifyReport, finite_difference_oracle, grid_export, verify

__version__ = "0.1.0"
