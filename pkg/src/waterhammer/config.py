"""Scenario files: a flat TOML table of numbers and profile expressions."""

import hashlib
import json
import math
import sys
from importlib import resources
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .core import FluidParams, Scenario
from .errors import ScenarioParseError, ValidationError
from .profiles import Profile

NUMERIC_KEYS = (
    "length_half", "dx", "courant", "t_close", "t_end",
    "rho_a", "p_a", "c_f", "D", "rho_left", "rho_right",
)
PROFILE_KEYS = ("rho_init", "v_init")
STIFFNESS_KEYS = ("K", "beta")
BUNDLED = ("waterhammer_s8",)


def _number(table, key):
    if key not in table:
        raise ScenarioParseError(key, "missing key")
    value = table[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioParseError(key, f"expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ScenarioParseError(key, "must be finite")
    return value


def _profile(table, key):
    if key not in table:
        raise ScenarioParseError(key, "missing key")
    value = table[key]
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise ScenarioParseError(key, f"expected a number or an expression, got {value!r}")
    try:
        return Profile(value)
    except ValidationError as exc:
        raise ScenarioParseError(key, str(exc)) from None


def parse_scenario(text):
    """Build a validated :class:`Scenario` from TOML text.

    Either ``K`` or ``beta`` (with K = 1/beta) gives the stiffness.  Every
    problem is reported as a :class:`ScenarioParseError` naming the key.
    """
    try:
        table = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ScenarioParseError("<document>", str(exc)) from None
    allowed = set(NUMERIC_KEYS) | set(PROFILE_KEYS) | set(STIFFNESS_KEYS)
    for key, value in table.items():
        if key not in allowed:
            raise ScenarioParseError(key, "unknown key")
        if isinstance(value, dict):
            raise ScenarioParseError(key, "nested tables are not allowed")

    present = [k for k in STIFFNESS_KEYS if k in table]
    if len(present) != 1:
        raise ScenarioParseError("K", "give exactly one of K or beta")
    if present[0] == "K":
        K = _number(table, "K")
    else:
        beta = _number(table, "beta")
        if not beta > 0:
            raise ScenarioParseError("beta", "must be > 0")
        K = 1.0 / beta

    values = {key: _number(table, key) for key in NUMERIC_KEYS}
    profiles = {key: _profile(table, key) for key in PROFILE_KEYS}

    try:
        params = FluidParams(K=K, rho_a=values["rho_a"], p_a=values["p_a"],
                             c_f=values["c_f"], D=values["D"])
    except ValidationError as exc:
        raise ScenarioParseError(_blame(str(exc), ("K", "rho_a", "p_a", "c_f", "D"), present[0]),
                                 str(exc)) from None
    try:
        return Scenario(
            params=params,
            length_half=values["length_half"], dx=values["dx"], courant=values["courant"],
            t_close=values["t_close"], t_end=values["t_end"],
            rho_init=profiles["rho_init"], v_init=profiles["v_init"],
            rho_left=values["rho_left"], rho_right=values["rho_right"],
        )
    except ValidationError as exc:
        raise ScenarioParseError(_blame(str(exc), NUMERIC_KEYS, "dx"), str(exc)) from None


def _blame(message, keys, default):
    for key in keys:
        if message.startswith(key) or f" {key} " in f" {message} ":
            return key
    if "reservoir" in message:
        return "rho_left"
    return default


def _toml_value(value):
    if isinstance(value, Profile):
        value = value.source
    if isinstance(value, str):
        return json.dumps(value)
    return repr(float(value))


def canonical_toml(scenario):
    """Text form of ``scenario`` that :func:`parse_scenario` maps back to it."""
    p = scenario.params
    rows = [
        ("length_half", scenario.length_half), ("dx", scenario.dx),
        ("courant", scenario.courant), ("t_close", scenario.t_close), ("t_end", scenario.t_end),
        ("K", p.K), ("rho_a", p.rho_a), ("p_a", p.p_a), ("c_f", p.c_f), ("D", p.D),
        ("rho_init", scenario.rho_init), ("v_init", scenario.v_init),
        ("rho_left", scenario.rho_left), ("rho_right", scenario.rho_right),
    ]
    return "".join(f"{key} = {_toml_value(value)}\n" for key, value in rows)


def scenario_hash(scenario):
    return hashlib.sha256(canonical_toml(scenario).encode()).hexdigest()


def bundled_text(name):
    if name not in BUNDLED:
        raise ScenarioParseError("<scenario>", f"no bundled scenario {name!r}; have {BUNDLED}")
    return resources.files("waterhammer").joinpath("scenarios", f"{name}.toml").read_text()


def load_scenario(source):
    """Parse a scenario file, or a bundled scenario given by name."""
    path = Path(source)
    if path.is_file():
        return parse_scenario(path.read_text())
    if str(source) in BUNDLED:
        return parse_scenario(bundled_text(str(source)))
    raise ScenarioParseError("<scenario>", f"{source!s} is neither a file nor a bundled scenario")
