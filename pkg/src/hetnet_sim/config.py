"""Simulation configuration: defaults, JSON parsing, validation, unit helpers.

The canonical on-disk format is a flat UTF-8 JSON object whose keys are
exactly the field names of :class:`SimulationConfig`. Absent keys fall back
to the defaults below; unknown keys are rejected so a checked-in config file
always reproduces the same run.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields
from typing import Any

CEE_MODES = ("relative", "absolute")
SPLIT_MODES = ("linear_split", "noise_scaled")

_MAX_SEED = 2**64 - 1


class ConfigError(ValueError):
    """Bad config document: names the offending key/field and the constraint."""


@dataclass(frozen=True)
class SimulationConfig:
    """All run parameters of the two-tier uplink simulation.

    Powers are dBm, distances meters, bandwidth Hz. BS/SC transmit powers and
    the centre frequency are carried for completeness only: the simulated
    direction is the uplink, where the transmitters are MCUs and SCUs.
    """

    grid_dim: int = 3                     # macro cells per side (B = grid_dim^2)
    site_distance_m: float = 1000.0       # cell square side; BS-to-BS spacing
    n_bs_antennas: int = 20               # N
    n_sc_antennas: int = 1                # F
    k_mcu_per_cell: int = 20              # K, must be <= N
    s_sc_per_cell: int = 20               # S small cells per macro cell
    p_mcu_dbm: float = 23.0
    p_scu_dbm: float = 23.0
    p_bs_dbm: float = 46.0                # recorded, unused (uplink only)
    p_sc_dbm: float = 24.0                # recorded, unused (uplink only)
    noise_psd_dbm_hz: float = -174.0
    bandwidth_hz: float = 2.0e7
    center_frequency_hz: float = 2.0e9    # recorded, unused (path loss embeds frequency)
    tdd_ul_fraction: float = 1.0          # T_UL/T share of frame time on the uplink
    sigma_e2_list: tuple = (0.0, 0.01, 0.1, 0.3)
    cee_mode: str = "relative"            # CEE variance per link: sigma_e2*beta or sigma_e2
    scu_drop_radius_m: float = 40.0
    min_link_distance_m: float = 10.0     # path-loss formulas need d >= 1 m
    shadow_std_bs_db: float = 6.0
    shadow_std_sc_los_db: float = 3.0
    shadow_std_sc_nlos_db: float = 4.0
    n_realizations: int = 1000
    seed: int = 0
    bandwidth_split_mode: str = "linear_split"
    rate_region_points: int = 21

    @property
    def n_cells(self) -> int:
        return self.grid_dim * self.grid_dim

    @property
    def p_mcu_watts(self) -> float:
        return dbm_to_watts(self.p_mcu_dbm)

    @property
    def p_scu_watts(self) -> float:
        return dbm_to_watts(self.p_scu_dbm)

    def noise_watts(self, bandwidth_hz: float | None = None) -> float:
        """Thermal noise power over the given band (default: full bandwidth)."""
        bw = self.bandwidth_hz if bandwidth_hz is None else bandwidth_hz
        return noise_power_watts(self.noise_psd_dbm_hz, bw)


_INT_FIELDS = {
    "grid_dim", "n_bs_antennas", "n_sc_antennas", "k_mcu_per_cell",
    "s_sc_per_cell", "n_realizations", "seed", "rate_region_points",
}
_FLOAT_FIELDS = {
    "site_distance_m", "p_mcu_dbm", "p_scu_dbm", "p_bs_dbm", "p_sc_dbm",
    "noise_psd_dbm_hz", "bandwidth_hz", "center_frequency_hz",
    "tdd_ul_fraction", "scu_drop_radius_m", "min_link_distance_m",
    "shadow_std_bs_db", "shadow_std_sc_los_db", "shadow_std_sc_nlos_db",
}
_STR_FIELDS = {"cee_mode", "bandwidth_split_mode"}


def _coerce(name: str, value: Any) -> Any:
    if name in _INT_FIELDS:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{name}: expected an integer, got {value!r}")
        return value
    if name in _FLOAT_FIELDS:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{name}: expected a number, got {value!r}")
        return float(value)
    if name in _STR_FIELDS:
        if not isinstance(value, str):
            raise ConfigError(f"{name}: expected a string, got {value!r}")
        return value
    if name == "sigma_e2_list":
        if not isinstance(value, (list, tuple)):
            raise ConfigError(f"sigma_e2_list: expected a list of numbers, got {value!r}")
        out = []
        for v in value:
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ConfigError(f"sigma_e2_list: expected a list of numbers, got {v!r}")
            out.append(float(v))
        return tuple(out)
    raise ConfigError(f"unknown key {name!r}")


def parse_config(text: str) -> SimulationConfig:
    """Parse a JSON config document; absent fields default, invariants enforced."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"malformed config document: {e}") from e
    if not isinstance(doc, dict):
        raise ConfigError("config document must be a JSON object")

    known = {f.name for f in fields(SimulationConfig)}
    values = {}
    for key, raw in doc.items():
        if key not in known:
            raise ConfigError(f"unknown key {key!r}")
        values[key] = _coerce(key, raw)

    cfg = SimulationConfig(**values)
    validate_config(cfg)
    return cfg


def load_config(path: str) -> SimulationConfig:
    with open(path, encoding="utf-8") as f:
        return parse_config(f.read())


def render_config(cfg: SimulationConfig) -> str:
    """Canonical JSON for a config; parse_config(render_config(c)) == c."""
    doc = {f.name: getattr(cfg, f.name) for f in fields(cfg)}
    doc["sigma_e2_list"] = list(doc["sigma_e2_list"])
    return json.dumps(doc, indent=2, sort_keys=True)


def validate_config(cfg: SimulationConfig) -> None:
    """Raise ConfigError naming the first violated field and its constraint."""
    def require(ok: bool, name: str, constraint: str) -> None:
        if not ok:
            raise ConfigError(f"{name}: must satisfy {constraint} (got {getattr(cfg, name)!r})")

    require(cfg.grid_dim >= 1, "grid_dim", ">= 1")
    require(math.isfinite(cfg.site_distance_m) and cfg.site_distance_m > 0,
            "site_distance_m", "> 0 and finite")
    require(cfg.n_bs_antennas >= 1, "n_bs_antennas", ">= 1")
    require(cfg.n_sc_antennas >= 1, "n_sc_antennas", ">= 1")
    require(cfg.k_mcu_per_cell >= 1, "k_mcu_per_cell", ">= 1")
    require(cfg.k_mcu_per_cell <= cfg.n_bs_antennas, "k_mcu_per_cell", "<= n_bs_antennas")
    require(cfg.s_sc_per_cell >= 0, "s_sc_per_cell", ">= 0")
    for name in ("p_mcu_dbm", "p_scu_dbm", "p_bs_dbm", "p_sc_dbm", "noise_psd_dbm_hz"):
        require(math.isfinite(getattr(cfg, name)), name, "finite")
    require(math.isfinite(cfg.bandwidth_hz) and cfg.bandwidth_hz > 0, "bandwidth_hz", "> 0")
    require(math.isfinite(cfg.center_frequency_hz) and cfg.center_frequency_hz > 0,
            "center_frequency_hz", "> 0")
    require(0.0 <= cfg.tdd_ul_fraction <= 1.0, "tdd_ul_fraction", "in [0, 1]")
    for v in cfg.sigma_e2_list:
        if not (math.isfinite(v) and v >= 0.0):
            raise ConfigError(f"sigma_e2_list: every entry must satisfy >= 0 (got {v!r})")
    require(cfg.cee_mode in CEE_MODES, "cee_mode", f"one of {CEE_MODES}")
    require(math.isfinite(cfg.scu_drop_radius_m) and cfg.scu_drop_radius_m >= 0,
            "scu_drop_radius_m", ">= 0")
    require(math.isfinite(cfg.min_link_distance_m) and cfg.min_link_distance_m >= 1.0,
            "min_link_distance_m", ">= 1 (path-loss formulas are invalid below 1 m)")
    for name in ("shadow_std_bs_db", "shadow_std_sc_los_db", "shadow_std_sc_nlos_db"):
        require(math.isfinite(getattr(cfg, name)) and getattr(cfg, name) >= 0, name, ">= 0")
    require(cfg.n_realizations >= 1, "n_realizations", ">= 1")
    require(0 <= cfg.seed <= _MAX_SEED, "seed", "a 64-bit unsigned integer")
    require(cfg.bandwidth_split_mode in SPLIT_MODES,
            "bandwidth_split_mode", f"one of {SPLIT_MODES}")
    require(cfg.rate_region_points >= 2, "rate_region_points", ">= 2")


def dbm_to_watts(p_dbm: float) -> float:
    """10^((p-30)/10); 30 dBm is 1 W."""
    return 10.0 ** ((p_dbm - 30.0) / 10.0)


def noise_power_watts(psd_dbm_hz: float, bw_hz: float) -> float:
    """Thermal noise power in watts for a flat PSD over a band of bw_hz."""
    if bw_hz <= 0:
        raise ValueError(f"bandwidth must be positive, got {bw_hz}")
    return dbm_to_watts(psd_dbm_hz + 10.0 * math.log10(bw_hz))
