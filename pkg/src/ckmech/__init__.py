"""Hamiltonian mechanics on the six three-dimensional Cayley-Klein spaces.

The spaces are labelled by (kappa1, kappa2): curvature and metric
signature. The package provides the kappa-trigonometry, the isometry
algebra so_{k1,k2}(4), geodesic polar charts and curvature, a phase-space
layer with analytic gradients, the superintegrable potentials with their
integrals of motion, a numerical verification harness and a trajectory
integrator.
"""

from .errors import (BranchError, ChartError, CKError, DegenerateMetric, PoleError,
                     SingularityApproach, SingularPotential, StepFailure)
from .liealg import SPACES, CKParams
from .observables import PotentialSpec
from .phasespace import Observable, PhasePoint, poisson_bracket

__all__ = [
    "CKParams", "SPACES", "PotentialSpec", "Observable", "PhasePoint", "poisson_bracket",
    "CKError", "PoleError", "DegenerateMetric", "ChartError", "BranchError",
    "SingularPotential", "SingularityApproach", "StepFailure",
]
