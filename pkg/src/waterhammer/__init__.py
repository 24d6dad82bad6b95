"""Lax-Wendroff water-hammer solver for a pipe between two reservoirs with a
mid-pipe valve that shuts instantaneously."""

from ._backend import BACKEND
from .config import canonical_toml, load_scenario, parse_scenario
from .core import (
    FluidParams, Grid, Phase, Scenario, State, pressure_of_density, reference_params,
    reference_scenario, sound_speed,
)
from .driver import Recording, Trajectory, joukowsky_surge, run

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "FluidParams", "Grid", "Phase", "Recording", "Scenario", "State", "Trajectory",
    "canonical_toml", "joukowsky_surge", "load_scenario", "parse_scenario", "pressure_of_density",
    "reference_params", "reference_scenario", "run", "sound_speed",
]
