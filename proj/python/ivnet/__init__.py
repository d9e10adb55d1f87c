"""Worst-case delay and memory bounds for in-vehicle Ethernet designs.

Exact values come back as fractions.Fraction (seconds and bits).
"""

from ._ivnet import (
    ModelError,
    Network,
    SimulationError,
    StabilityError,
    golden,
    parse_quantity,
    scenario_names,
)

__all__ = [
    "ModelError",
    "Network",
    "SimulationError",
    "StabilityError",
    "golden",
    "parse_quantity",
    "scenario_names",
]
