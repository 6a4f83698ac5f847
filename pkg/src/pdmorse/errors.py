"""Exception hierarchy shared by all solver components."""


class PdmorseError(Exception):
    """Base class for every error raised by this package."""


class EvaluationOverflow(PdmorseError):
    """A pointwise field evaluation produced a non-finite value.

    Carries the first offending coordinate so grid sweeps can report
    where the exponentials blew up instead of propagating NaN.
    """

    def __init__(self, what: str, x: float, y: float | None = None):
        self.what = what
        self.x = x
        self.y = y
        at = f"x={x!r}" if y is None else f"x={x!r}, y={y!r}"
        super().__init__(f"{what} overflowed to a non-finite value at {at}")


class OrderingNotSolvable(PdmorseError):
    """The kinetic-ordering parameters do not collapse the reduced problem."""


class NoBoundStates(PdmorseError):
    """The exponential channel does not support any bound state."""


class InvalidLevel(PdmorseError):
    """Requested quantum number exceeds the channel's level count."""


class ChannelUnsupported(PdmorseError):
    """At this trial energy the separated channels lose bound-state support."""

    def __init__(self, e_trial: float, reason: str):
        self.e_trial = e_trial
        self.reason = reason
        super().__init__(f"no bound-state channel at E={e_trial!r}: {reason}")


class QuadratureNotConverged(PdmorseError):
    """Adaptive normalization quadrature failed to reach tolerance."""


class GridTooSmall(PdmorseError):
    """The finite-difference grid cannot resolve the requested levels."""


class NotConverged(PdmorseError):
    """An iterative numerical routine failed to converge."""


class NoBracket(PdmorseError):
    """No sign change found; refusing to fabricate a root."""


class Unbounded(PdmorseError):
    """The potential keeps decreasing at the scan boundary."""

    def __init__(self, x: float, y: float, value: float):
        self.x = x
        self.y = y
        self.value = value
        super().__init__(
            f"potential still decreasing at scan boundary ({x!r}, {y!r}), V={value!r}"
        )


class DegenerateWindow(PdmorseError):
    """Potential minimum coincides with its asymptote: no binding interval."""


class UnknownLevel(PdmorseError):
    """Requested (m, n) does not identify an emitted spectrum entry."""


class ConfigError(PdmorseError):
    """Run configuration failed validation."""
