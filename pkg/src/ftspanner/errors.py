"""Exceptions shared across modules. The CLI maps these onto exit codes."""


class GuardExceeded(RuntimeError):
    """An exhaustive routine was asked to enumerate more than its configured limit."""


class SimulationError(RuntimeError):
    """A distributed run could not complete (round cap, coverage, congestion)."""


class BandwidthExceeded(SimulationError):
    """A CONGEST send would put more bits on an edge in one round than the budget allows."""
