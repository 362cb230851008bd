"""Exception types shared across the ovalbound modules."""


class OvalboundError(Exception):
    """Base class for all library errors."""


class DomainError(OvalboundError):
    """Argument outside the mathematical domain of an operation."""


class CurveFormatError(OvalboundError):
    """Curve JSON could not be parsed into Fourier coefficients."""


class RejectedCurve(OvalboundError):
    """Convexity margin violated: min (phi^-1)' fell below the threshold."""

    def __init__(self, min_value: float, argmin_t: float, eps_convex: float):
        self.min_value = min_value
        self.argmin_t = argmin_t
        self.eps_convex = eps_convex
        super().__init__(
            f"curve rejected: min (phi^-1)' = {min_value:.6g} at t = {argmin_t:.6g} "
            f"(threshold {eps_convex:.3g})"
        )


class NonMonotone(OvalboundError):
    """Tangent-angle inversion encountered a non-positive derivative."""


class NoConvergence(OvalboundError):
    """Iterative solve did not reach tolerance within the iteration budget."""


class DegenerateProfile(OvalboundError):
    """Odd-harmonic profile is identically zero; every angle is critical."""


class ConvergenceFailure(OvalboundError):
    """Eigenvalue changed more than the tolerance when the basis was doubled."""


class ZeroFunction(OvalboundError):
    """Test function is numerically zero; the quotient is undefined."""


class DegenerateProjection(OvalboundError):
    """A projection direction has numerically vanishing mass."""


class DegenerateAngles(OvalboundError):
    """Two of the three angles are congruent modulo pi within the margin."""


class SingularDenominator(OvalboundError):
    """Weighted moment denominator vanished in the three-angle quotient."""


class AmbiguousExtrema(OvalboundError):
    """More than one extremum pair survived refinement; signals a bug."""


class EqualPointNotFound(OvalboundError):
    """No sign change of I(t) - I(t + pi/2); contradicts the intermediate
    value argument for non-constant projections."""


class InequalityViolated(OvalboundError):
    """A verified majorant inequality came out negative beyond roundoff."""

    def __init__(self, name: str, location: float, margin: float):
        self.name = name
        self.location = location
        self.margin = margin
        super().__init__(f"{name}: slack {margin:.3e} at {location:.6g}")


class DiscriminantSign(OvalboundError):
    """Cubic discriminant had the wrong sign; signals a bug."""


class SingularSystem(OvalboundError):
    """Plateau balance system is singular (split point at a zero pivot)."""


class NegativeWeight(OvalboundError):
    """Balance solve produced a non-positive plateau height."""


class ExhaustedRejection(OvalboundError):
    """Rejection sampler ran out of tries."""

    def __init__(self, n_tries: int):
        self.n_tries = n_tries
        super().__init__(f"rejection sampling exhausted after {n_tries} tries")


class CheckFailed(OvalboundError):
    """One or more verification checks failed."""
