"""Exception types shared across the package.

The split mirrors the process exit codes: bad input data (2), guard
refusals (3), and verification mismatches (1) are distinguishable by type.
"""


class CutboundError(Exception):
    """Base class for all domain errors raised by this package."""


class InputError(CutboundError):
    """Malformed or semantically invalid input (bad metric, bad weights, ...)."""


class DisconnectedGraphError(InputError):
    """A metric was requested from a graph with an unreachable vertex pair."""

    def __init__(self, u: int, v: int):
        self.pair = (u, v)
        super().__init__(f"graph is disconnected: no path between vertices {u} and {v}")


class GuardExceededError(CutboundError):
    """A computation was refused because it exceeds a configured size guard."""


class InfiniteDistortionError(CutboundError):
    """An embedded distance of zero was found on a pair of distinct points."""

    def __init__(self, x: int, y: int):
        self.pair = (x, y)
        super().__init__(
            f"embedded distance is zero on the distinct pair ({x}, {y}); "
            "distortion is infinite"
        )
