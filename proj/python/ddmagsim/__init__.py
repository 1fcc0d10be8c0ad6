"""Monte Carlo simulation of a dynamically decoupled fiber-optic AC magnetometer."""

from ._ddmagsim import *  # noqa: F401,F403
from ._ddmagsim import ConfigError, DegenerateError, IoError, SweepResult


def as_columns(result: SweepResult) -> dict[str, list[float]]:
    """Map each column label to its values."""
    return {label: result.column(label) for label in result.labels}


__all__ = [name for name in dir() if not name.startswith("_")]
