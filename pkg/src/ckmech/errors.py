"""Exception hierarchy shared by all modules."""


class CKError(ArithmeticError):
    """Base class for evaluation failures on Cayley-Klein spaces."""


class PoleError(CKError):
    """A kappa-tangent (or cotangent) was evaluated at a pole."""


class DegenerateMetric(CKError):
    """The geodesic polar chart is singular at the requested point."""


class ChartError(CKError):
    """An ambient point lies outside the geodesic polar chart."""


class BranchError(CKError):
    """No principal-branch inverse exists for the requested kappa-sine value."""


class SingularPotential(CKError):
    """An active centrifugal-barrier denominator vanished."""


class SingularityApproach(CKError):
    """A trajectory came within the guard margin of a singular locus."""


class StepFailure(CKError):
    """The adaptive integrator step size underflowed.

    The partial trajectory computed so far is available as ``trajectory``.
    """

    def __init__(self, message, trajectory=None):
        super().__init__(message)
        self.trajectory = trajectory


#: Errors that mark a phase-space point as irregular for a given observable.
EVALUATION_ERRORS = (PoleError, DegenerateMetric, SingularPotential, BranchError)
