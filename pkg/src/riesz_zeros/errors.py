"""Exception types shared across the package."""


class KappaDivergence(ValueError):
    """Pair correlation evaluated at r = 0 in dimensions where it blows up."""


class DivergentIntegral(ValueError):
    """Requested coefficient integral does not converge at r = 0."""


class PrecisionFailure(RuntimeError):
    """Quadrature could not reach the requested tolerance.

    The best available estimate is attached as ``best``.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class NoCrossing(RuntimeError):
    """No sign change of c_m(s) was found on (0, 4)."""


class DiagonalSingularity(ValueError):
    """A singular kernel was evaluated at coincident points."""


class InfiniteEnergy(ArithmeticError):
    """Two points of a configuration coincide under a singular kernel."""

    def __init__(self, message, indices=()):
        super().__init__(message)
        self.indices = tuple(indices)


class DegenerateSample(ValueError):
    """All polynomial coefficients vanish (numerically)."""


class RootFinderFailure(RuntimeError):
    """Root iteration failed to converge or left large residuals."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
