"""Exception hierarchy shared by all gref modules."""


class GrefError(Exception):
    """Base class for every error raised by this package."""


class NonPositiveCoefficient(GrefError):
    """Tangent-polynomial endpoint value c0 or c1 is not positive."""


class ComplexTPRoots(GrefError):
    """Second-order tangent polynomial without two distinct real roots.

    Raised for -2*sqrt(c0) <= d < 2*sqrt(c0) with a nonzero leading
    coefficient; the double-root boundary d = -2*sqrt(c0) is excluded
    as well.
    """


class TPNotPositiveOnInterval(GrefError):
    """Tangent polynomial is not strictly positive on [0, 1]."""


class OutOfInterval(GrefError):
    """Argument z lies outside the open interval (0, 1)."""


class NonConvergence(GrefError):
    """Root finding or quadrature failed to reach its tolerance."""


class DegenerateAllZero(GrefError):
    """All polynomial coefficients vanish; roots are undefined."""


class DenominatorVanishes(GrefError):
    """Fraction formula for the partner exponent difference is singular.

    Signals a double-root locus; the caller must switch to the other
    quartic route.
    """


class Boundary(GrefError):
    """Sign pattern undecidable: an exponent difference sits at zero."""


class DomainExceeded(GrefError):
    """Curve evaluator queried outside its real domain."""


class NotNearSeparatrix(GrefError):
    """Point is too far from every zero-factorization-energy line."""


class SymCaseExcluded(GrefError):
    """Symmetric tangent polynomial (c0 = 1 with a2 < 0) is unsupported."""


class RMCase(GrefError):
    """Rosen-Morse limit c0 = 1 must go through the dedicated routine."""


class NoMerge(GrefError):
    """Same-type pairs never merge when the leading coefficient a2 >= 0."""


class PoleAtAEqualsM(GrefError):
    """Rosen-Morse exponent difference diverges on the mu0 = 2m+1 line."""


class NotOnCurve(GrefError):
    """Requested point fails the double-root curve equation."""


class NodeDetected(GrefError):
    """Factorization function changes sign on the interior grid."""


class WronskianNode(GrefError):
    """Wronskian of the factorization chain changes sign."""


class GridTooCoarse(GrefError):
    """Eigenvalue extrapolation disagrees beyond tolerance."""


class BadConfig(GrefError):
    """Command-line or JSON configuration is invalid."""
