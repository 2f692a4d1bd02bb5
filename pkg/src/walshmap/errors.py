"""Exception hierarchy shared across the package."""


class WalshMapError(Exception):
    """Base class for all errors raised by this package."""


# --- interval domain ---------------------------------------------------------

class OverlapError(WalshMapError):
    """Input intervals touch or overlap after sorting."""


class DegenerateError(WalshMapError):
    """An input interval has zero or negative length."""


# --- quadrature --------------------------------------------------------------

class NoConvergence(WalshMapError):
    """Node doubling exhausted without meeting the requested tolerance."""

    def __init__(self, message, best=None, estimate=None):
        super().__init__(message)
        self.best = best
        self.estimate = estimate


# --- Green's function side (E) -----------------------------------------------

class OnCutError(WalshMapError):
    """sqrt(H) requested on a branch cut; use the rim limits instead."""


class NotOnCut(WalshMapError):
    """Rim value requested at a point that is not on the set E."""


class SingularSystem(WalshMapError):
    """Moment matrix numerically singular (quadrature failure)."""


class RootNotBracketed(WalshMapError):
    """Expected sign change missing in a gap."""


class PathOnCut(WalshMapError):
    """Complex Green integral requested on the excluded half-line."""


class CapacityMismatch(WalshMapError):
    """The two capacity formulas disagree beyond tolerance."""


# --- equilibrium measure -----------------------------------------------------

class OutsideSupport(WalshMapError):
    """Density evaluated off the support (or at a diverging endpoint)."""


class NormalizationDefect(WalshMapError):
    """Exponents fail to sum to 1 within tolerance before renormalization."""


class PadTooLarge(WalshMapError):
    """Contour rectangle would intersect another component."""


# --- lemniscatic side (L) ----------------------------------------------------

class PoleAtCenter(WalshMapError):
    """g_L or its derivative evaluated at a center a_j."""


class BracketFailure(WalshMapError):
    """Could not bracket a zero of g_L."""


class MaxIterExceeded(WalshMapError):
    """Center iteration did not converge within the outer cap."""


class OrderViolation(WalshMapError):
    """A center iterate broke the ordering a_1 < ... < a_ell."""


# --- conformal map -----------------------------------------------------------

class InsideE(WalshMapError):
    """Map evaluation requested in the interior of E."""


class RayBracketFailure(WalshMapError):
    """A boundary-tracing ray crossed the level set more than once."""
