"""Run configuration: JSON document plus command-line overrides, validated up front."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .dynamics import Window
from .em import Polarization
from .scalar import PARITIES, ModeIndex


class ConfigError(ValueError):
    """Invalid configuration; maps to exit status 2."""


#: grids below this size are accepted for smoke runs but flagged
RECOMMENDED_MIN_GRID = 16


@dataclass(frozen=True)
class RunConfig:
    parity: str = "odd"
    a: float = -2.0
    kz_over_k: float = 0.995
    wavelength: float = 1.0
    amp_te: tuple = (1.0, 0.0)
    amp_tm: tuple = (0.0, 0.0)
    grid_n: int = 64
    extent: float = 10.0
    plane: str = "xy"
    window: dict = field(default_factory=dict)
    scan_extents: tuple = (10.0, 20.0, 30.0, 40.0)
    omega: float = 1.0
    hbar: float = 1.0
    seed: int = 12345
    threads: int = 1
    out: str | None = None
    pgm: str | None = None

    def validate(self):
        if self.parity not in PARITIES:
            raise ConfigError(f"parity must be one of {PARITIES}")
        if not np.isfinite(self.a):
            raise ConfigError("a must be a finite real number")
        if not 0 < self.kz_over_k < 1:
            raise ConfigError("kz_over_k must lie in (0, 1)")
        if not self.wavelength > 0:
            raise ConfigError("wavelength must be positive")
        for name in ("amp_te", "amp_tm"):
            pair = getattr(self, name)
            if len(pair) != 2 or not all(np.isfinite(x) for x in pair):
                raise ConfigError(f"{name} must be a finite (re, im) pair")
        if self.amp_te == (0.0, 0.0) and self.amp_tm == (0.0, 0.0):
            raise ConfigError("polarization amplitudes cannot both be zero")
        if int(self.grid_n) != self.grid_n or self.grid_n < 2:
            raise ConfigError("grid n must be an integer >= 2")
        if not self.extent > 0:
            raise ConfigError("extent must be positive")
        if self.plane not in ("xy", "uv"):
            raise ConfigError("plane must be 'xy' or 'uv'")
        if not self.scan_extents or any(not e > 0 for e in self.scan_extents):
            raise ConfigError("scan extents must be positive")
        if not (self.omega > 0 and self.hbar > 0):
            raise ConfigError("omega and hbar must be positive")
        if int(self.threads) != self.threads or self.threads < 1:
            raise ConfigError("threads must be a positive integer")
        for key in self.window:
            if key not in ("u_max", "v_max", "n_u", "n_v"):
                raise ConfigError(f"unknown window key {key!r}")
        try:
            self.integration_window()
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        return self

    @property
    def small_grid(self):
        return self.grid_n < RECOMMENDED_MIN_GRID

    def mode(self, parity=None):
        return ModeIndex.from_ratio(parity or self.parity, self.a, self.kz_over_k, self.wavelength)

    def photon_mode(self):
        """Mode in units with c = 1 and the configured omega (default 1)."""
        return ModeIndex(parity=self.parity, omega=self.omega, kz=self.kz_over_k * self.omega, a=self.a)

    def polarization(self):
        return Polarization(complex(*self.amp_te), complex(*self.amp_tm))

    def integration_window(self, extent=None):
        """Window from the ``window`` block, or from ``extent`` (default ``self.extent``)."""
        mode = self.mode()
        base = Window.from_extent((extent or self.extent) * self.wavelength, mode.k_perp)
        if extent is None and self.window:
            return replace(base, **{k: (int(v) if k.startswith("n_") else float(v))
                                    for k, v in self.window.items()})
        return base

    def echo(self):
        d = asdict(self)
        d["amp_te"] = list(self.amp_te)
        d["amp_tm"] = list(self.amp_tm)
        d["scan_extents"] = list(self.scan_extents)
        return d


def _pair(value, name):
    if isinstance(value, str):
        parts = value.split(",")
    else:
        parts = list(value)
    if len(parts) != 2:
        raise ConfigError(f"{name} must be given as re,im")
    try:
        return (float(parts[0]), float(parts[1]))
    except (TypeError, ValueError):
        raise ConfigError(f"{name} must be given as re,im") from None


_SECTIONS = {
    "mode": {"parity": "parity", "a": "a", "kz_over_k": "kz_over_k", "wavelength": "wavelength"},
    "polarization": {"amp_TE": "amp_te", "amp_TM": "amp_tm"},
    "grid": {"n": "grid_n", "extent": "extent", "plane": "plane"},
    "scan": {"extents": "scan_extents"},
    "photon": {"omega": "omega", "hbar": "hbar"},
    "output": {"csv": "out", "pgm": "pgm"},
    "run": {"seed": "seed", "threads": "threads"},
}


def config_from_dict(doc):
    """Flatten and coerce a nested JSON-like dict into :class:`RunConfig` keywords."""
    if not isinstance(doc, dict):
        raise ConfigError("configuration must be a JSON object")
    kw = {}
    for section, body in doc.items():
        if section == "window":
            if not isinstance(body, dict):
                raise ConfigError("window must be an object")
            kw["window"] = dict(body)
            continue
        if section not in _SECTIONS:
            raise ConfigError(f"unknown section {section!r}")
        if not isinstance(body, dict):
            raise ConfigError(f"section {section!r} must be an object")
        for key, value in body.items():
            if key not in _SECTIONS[section]:
                raise ConfigError(f"unknown key {section}.{key}")
            kw[_SECTIONS[section][key]] = value
    return _coerce(kw)


def _coerce(kw):
    out = {}
    try:
        for key, value in kw.items():
            if key in ("amp_te", "amp_tm"):
                out[key] = _pair(value, key)
            elif key == "scan_extents":
                out[key] = tuple(float(x) for x in value)
            elif key in ("grid_n", "seed", "threads"):
                if float(value) != int(value):
                    raise ConfigError(f"{key} must be an integer")
                out[key] = int(value)
            elif key in ("a", "kz_over_k", "wavelength", "extent", "omega", "hbar"):
                out[key] = float(value)
            else:
                out[key] = value
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"bad value: {exc}") from None
    return out


def load_config(path=None, overrides=None):
    """Read an optional JSON file, apply flat overrides, validate."""
    kw = {}
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from None
        kw.update(config_from_dict(doc))
    if overrides:
        kw.update(_coerce({k: v for k, v in overrides.items() if v is not None}))
    try:
        cfg = RunConfig(**kw)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None
    return cfg.validate()

