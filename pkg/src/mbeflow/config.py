"""Flat key-value run configuration: parsing, defaults, echo, and presets.

A configuration is a text document of `key = value` lines (# starts a
comment).  Unknown keys, duplicate keys, and missing required keys are
rejected by name, with line numbers where available.  Float values accept
multiples of pi ("pi", "2pi", "0.5*pi").  The fully-resolved configuration
(defaults applied, tau made explicit) can be echoed back out as the same
format; re-running from the echo reproduces the original run.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError
from .grid import Field, Grid, make_grid, sample_function
from .ics import relaxation_ic, slope_benchmark_ic
from .rng import GENERATORS, uniform_values
from .splitting import RunConfig

__all__ = [
    "ConfigFile",
    "parse_config",
    "resolve_config",
    "config_echo",
    "config_hash",
    "build_initial_condition",
    "grid_from_config",
    "run_config_from_config",
    "RANDOM_IC_RANGE",
]

RANDOM_IC_RANGE = (-0.001, 0.001)

_REQUIRED = ("dims", "J", "L", "delta", "T", "ic")
_KEY_ORDER = (
    "dims",
    "J",
    "L",
    "delta",
    "tau",
    "T",
    "safety",
    "diag_every",
    "snapshot_times",
    "ic",
    "seed",
    "rng",
    "out_dir",
)
_IC_NAMES = ("ts32-trig", "ex1-trig", "uniform-random")


@dataclass(frozen=True)
class ConfigFile:
    """A fully-resolved run configuration."""

    dims: int
    J: int
    L: float
    delta: float
    tau: float
    T: float
    safety: float
    diag_every: int
    snapshot_times: tuple[float, ...]
    ic: str
    seed: int | None
    rng: str
    out_dir: str


def _parse_float(text: str, key: str, line: int | None) -> float:
    s = text.strip().lower().replace(" ", "")
    try:
        if s.endswith("pi"):
            head = s[:-2].rstrip("*")
            if head in ("", "+"):
                return np.pi
            if head == "-":
                return -np.pi
            return float(head) * np.pi
        return float(s)
    except ValueError:
        raise ConfigurationError(
            f"key '{key}'{_at(line)}: cannot parse {text!r} as a number"
        ) from None


def _parse_int(text: str, key: str, line: int | None) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise ConfigurationError(
            f"key '{key}'{_at(line)}: cannot parse {text!r} as an integer"
        ) from None


def _at(line: int | None) -> str:
    return f" (line {line})" if line is not None else ""


def parse_config(text: str) -> dict[str, tuple[str, int | None]]:
    """Parse key-value lines into {key: (raw value, line number)}."""
    raw: dict[str, tuple[str, int | None]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigurationError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in body.split("=", 1))
        if key not in _KEY_ORDER:
            raise ConfigurationError(f"unknown key '{key}' (line {lineno})")
        if key in raw:
            raise ConfigurationError(f"duplicate key '{key}' (line {lineno})")
        raw[key] = (value, lineno)
    return raw


def resolve_config(
    raw: dict[str, tuple[str, int | None]], overrides: dict[str, str] | None = None
) -> ConfigFile:
    """Apply overrides and defaults, convert types, and cross-validate."""
    merged = dict(raw)
    for key, value in (overrides or {}).items():
        if key not in _KEY_ORDER:
            raise ConfigurationError(f"unknown key '{key}' (from --set)")
        merged[key] = (value, None)

    for key in _REQUIRED:
        if key not in merged:
            raise ConfigurationError(f"missing required key '{key}'")

    def get(key):
        return merged.get(key, (None, None))

    dims = _parse_int(*_kv(merged, "dims"))
    J = _parse_int(*_kv(merged, "J"))
    L = _parse_float(*_kv(merged, "L"))
    delta = _parse_float(*_kv(merged, "delta"))
    T = _parse_float(*_kv(merged, "T"))
    ic = merged["ic"][0].strip()

    tau = _parse_float(*_kv(merged, "tau")) if "tau" in merged else delta / 10.0
    safety = _parse_float(*_kv(merged, "safety")) if "safety" in merged else 0.9
    diag_every = _parse_int(*_kv(merged, "diag_every")) if "diag_every" in merged else 1
    if "snapshot_times" in merged:
        value, line = merged["snapshot_times"]
        parts = [p for p in (s.strip() for s in value.split(",")) if p]
        snapshot_times = tuple(_parse_float(p, "snapshot_times", line) for p in parts)
    else:
        snapshot_times = ()
    seed = _parse_int(*_kv(merged, "seed")) if "seed" in merged else None
    rng = merged["rng"][0].strip() if "rng" in merged else "splitmix64"
    out_dir = merged["out_dir"][0].strip() if "out_dir" in merged else "out"

    if ic not in _IC_NAMES:
        raise ConfigurationError(f"unknown ic '{ic}'; choose one of {_IC_NAMES}")
    if ic == "uniform-random" and seed is None:
        raise ConfigurationError("ic 'uniform-random' requires a seed")
    if rng not in GENERATORS:
        raise ConfigurationError(f"unknown rng '{rng}'; known generators: {sorted(GENERATORS)}")

    return ConfigFile(
        dims=dims,
        J=J,
        L=L,
        delta=delta,
        tau=tau,
        T=T,
        safety=safety,
        diag_every=diag_every,
        snapshot_times=snapshot_times,
        ic=ic,
        seed=seed,
        rng=rng,
        out_dir=out_dir,
    )


def _kv(merged, key):
    value, line = merged[key]
    return value, key, line


def _fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def config_echo(cfg: ConfigFile) -> str:
    """Serialise the resolved configuration; parseable by parse_config."""
    lines = []
    for key in _KEY_ORDER:
        value = getattr(cfg, key)
        if key == "seed" and value is None:
            continue
        if key == "snapshot_times":
            if not value:
                continue
            rendered = ", ".join(_fmt_float(t) for t in value)
        elif isinstance(value, float):
            rendered = _fmt_float(value)
        else:
            rendered = str(value)
        lines.append(f"{key} = {rendered}")
    return "\n".join(lines) + "\n"


def config_hash(cfg: ConfigFile) -> str:
    """Short digest of the resolved configuration, used for output subpaths."""
    return hashlib.sha256(config_echo(cfg).encode()).hexdigest()[:12]


def grid_from_config(cfg: ConfigFile) -> Grid:
    return make_grid(cfg.dims, cfg.J, cfg.L)


def run_config_from_config(cfg: ConfigFile) -> RunConfig:
    return RunConfig(
        delta=cfg.delta,
        tau=cfg.tau,
        T=cfg.T,
        safety=cfg.safety,
        diag_every=cfg.diag_every,
        snapshot_times=cfg.snapshot_times,
    )


def build_initial_condition(cfg: ConfigFile, grid: Grid) -> Field:
    """Construct the configured initial field on the given grid."""
    if cfg.ic == "ts32-trig":
        if grid.dims != 2:
            raise ConfigurationError("ic 'ts32-trig' is two-dimensional; set dims = 2")
        return sample_function(grid, slope_benchmark_ic)
    if cfg.ic == "ex1-trig":
        if grid.dims != 1:
            raise ConfigurationError("ic 'ex1-trig' is one-dimensional; set dims = 1")
        return sample_function(grid, relaxation_ic)
    if cfg.ic == "uniform-random":
        lo, hi = RANDOM_IC_RANGE
        n = grid.J**grid.dims
        values = uniform_values(cfg.rng, cfg.seed, n, lo, hi).reshape(grid.shape)
        return Field(grid, values)
    raise ConfigurationError(f"unknown ic '{cfg.ic}'")
