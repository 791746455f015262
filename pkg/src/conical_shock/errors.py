"""Exception hierarchy.

Two broad classes matter to callers: :class:`DomainError` for inputs outside
the admissible parameter set, and :class:`RegimeFailure` for well-posed inputs
whose flow leaves the regime the solver can handle (no attached shock, no cone
found, no bracket).  The CLI maps them to exit codes 2 and 3.
"""


class ConicalFlowError(Exception):
    """Base class for all solver errors."""


class DomainError(ConicalFlowError, ValueError):
    """Input parameter outside its admissible set."""


class NonPhysical(ConicalFlowError):
    """State with nonpositive pressure (total enthalpy exhausted)."""


class KindMismatch(ConicalFlowError, TypeError):
    """Scalar measure paired with a vector test field, or vice versa."""


class RegimeFailure(ConicalFlowError):
    """The configuration is outside the regime covered by the solver."""


class SubsonicNormal(RegimeFailure):
    """Upstream normal Mach number M0*sin(beta) <= 1: no admissible shock."""


class DegenerateShock(SubsonicNormal):
    """M0n == 1: the jump degenerates to a continuous (sonic) transition."""


class SonicSingularity(RegimeFailure):
    """c^2 - u^2 fell below the determinant floor."""


class NoConeFound(RegimeFailure):
    """The inverse integration reached theta_floor with u still negative."""


class InvariantRegionExit(RegimeFailure):
    """A state left the invariant region or broke a proved a-priori bound."""


class NoBracket(RegimeFailure):
    """No sign change of T(beta) - theta0 found for the direct problem."""


class RegimeError(RegimeFailure):
    """Chaplygin formula requested outside its hypothesis."""


class MonotonicityError(ConicalFlowError):
    """A heuristic convergence-ordering check failed in strict mode."""
