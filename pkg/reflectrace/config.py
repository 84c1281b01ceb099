"""
Reflectrace Configuration Module

Centralizes all configuration options with support for:
- Environment variables (REFLECTRACE_*)
- System config files (flat key = value text describing a Coxeter system)
- Sensible defaults
"""

import os
import logging
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .coxeter import CoxeterMatrix, CoxeterSystem, build_system, format_label, parse_label
from .errors import ConfigError, UnsupportedLabelError


logger = logging.getLogger(__name__)


# --- DEFAULT CONSTANTS ---
DEFAULT_BALL_CAP = 50000
DEFAULT_CONJ_RADIUS = 6
DEFAULT_CENTRALIZER_RADIUS = 6
DEFAULT_ORDER_CAP = 48
DEFAULT_COSET_CAP = 2000
DEFAULT_FOLD_CAP = 10000
DEFAULT_SUBGROUP_RADIUS = 16
DEFAULT_LEMMA_RADIUS = 4
DEFAULT_WF_RADIUS = 3
DEFAULT_WITNESS_COUNT = 10
DEFAULT_CACHE_DIR = ".reflectrace_cache"

# Options a system config file may override
OPTION_KEYS = (
    "ball_cap",
    "conj_radius",
    "centralizer_radius",
    "order_cap",
    "coset_cap",
    "fold_cap",
    "subgroup_radius",
)

_ENV_INTS = {
    "REFLECTRACE_BALL_CAP": "ball_cap",
    "REFLECTRACE_CONJ_RADIUS": "conj_radius",
    "REFLECTRACE_CENTRALIZER_RADIUS": "centralizer_radius",
    "REFLECTRACE_ORDER_CAP": "order_cap",
    "REFLECTRACE_COSET_CAP": "coset_cap",
    "REFLECTRACE_FOLD_CAP": "fold_cap",
    "REFLECTRACE_SUBGROUP_RADIUS": "subgroup_radius",
}


@dataclass
class ReflectraceConfig:
    """Caps and radii for every bounded search, plus cache settings."""

    # Enumeration caps
    ball_cap: int = DEFAULT_BALL_CAP
    order_cap: int = DEFAULT_ORDER_CAP
    coset_cap: int = DEFAULT_COSET_CAP
    fold_cap: int = DEFAULT_FOLD_CAP

    # Search radii
    conj_radius: int = DEFAULT_CONJ_RADIUS
    centralizer_radius: int = DEFAULT_CENTRALIZER_RADIUS
    subgroup_radius: int = DEFAULT_SUBGROUP_RADIUS
    lemma_radius: int = DEFAULT_LEMMA_RADIUS
    wf_radius: int = DEFAULT_WF_RADIUS
    witness_count: int = DEFAULT_WITNESS_COUNT

    # Cache
    cache_dir: str = DEFAULT_CACHE_DIR
    use_cache: bool = True

    @classmethod
    def from_env(cls) -> "ReflectraceConfig":
        """
        Create configuration from REFLECTRACE_* environment variables.

        Returns:
            ReflectraceConfig instance
        """
        config = cls()
        config.cache_dir = os.getenv("REFLECTRACE_CACHE_DIR", config.cache_dir)

        for variable, attribute in _ENV_INTS.items():
            if raw := os.getenv(variable):
                try:
                    value = int(raw)
                    if value <= 0:
                        raise ValueError(raw)
                    setattr(config, attribute, value)
                except ValueError:
                    logger.warning(f"Invalid {variable} value: {raw}, using default")

        if no_cache := os.getenv("REFLECTRACE_NO_CACHE"):
            config.use_cache = no_cache.strip().lower() not in ("1", "true", "yes", "on")

        return config


@dataclass
class SystemConfig:
    """A Coxeter system as read from a config file."""

    name: str
    generators: List[str]
    rows: List[List[float]]
    options: Dict[str, int] = field(default_factory=dict)

    @classmethod
    def parse(cls, text: str, source: str = "<config>") -> "SystemConfig":
        """
        Parse flat `key = value` text.

        Format:
        - Lines starting with # are comments, empty lines are ignored
        - `name` and `generators` (whitespace separated) appear once
        - one `row` line per matrix row, labels or `inf`
        - any of OPTION_KEYS with a positive integer value

        Raises:
            ConfigError: with the offending line number
        """
        name: Optional[str] = None
        generators: Optional[List[str]] = None
        rows: List[List[float]] = []
        row_lines: List[int] = []
        options: Dict[str, int] = {}

        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"expected 'key = value', got {line!r}", number, source)
            key, value = (part.strip() for part in line.split("=", 1))
            if key == "name":
                if name is not None:
                    raise ConfigError("duplicate 'name'", number, source)
                if not value:
                    raise ConfigError("empty system name", number, source)
                name = value
            elif key == "generators":
                if generators is not None:
                    raise ConfigError("duplicate 'generators'", number, source)
                generators = value.split()
                if len(set(generators)) != len(generators):
                    raise ConfigError("generator names must be distinct", number, source)
            elif key == "row":
                try:
                    rows.append([parse_label(x) for x in value.split()])
                except UnsupportedLabelError as e:
                    raise ConfigError(str(e), number, source) from None
                row_lines.append(number)
            elif key in OPTION_KEYS:
                try:
                    option = int(value)
                except ValueError:
                    raise ConfigError(f"option {key} must be an integer, got {value!r}", number, source) from None
                if option <= 0:
                    raise ConfigError(f"option {key} must be positive, got {option}", number, source)
                options[key] = option
            else:
                raise ConfigError(f"unknown key {key!r}", number, source)

        if name is None:
            raise ConfigError("missing 'name'", None, source)
        if not rows:
            raise ConfigError("missing matrix 'row' lines", None, source)
        if generators is None:
            generators = [f"s{i}" for i in range(len(rows))]
        if len(generators) != len(rows):
            raise ConfigError(f"{len(generators)} generators but {len(rows)} matrix rows", row_lines[0], source)
        for number, row in zip(row_lines, rows):
            if len(row) != len(rows):
                raise ConfigError(f"row has {len(row)} labels, expected {len(rows)}", number, source)

        config = cls(name=name, generators=generators, rows=rows, options=options)
        try:
            config.matrix()
        except (ValueError, UnsupportedLabelError) as e:
            raise ConfigError(str(e), row_lines[0], source) from None
        return config

    @classmethod
    def load(cls, path: str) -> "SystemConfig":
        try:
            with open(path, "r", encoding="utf-8") as f:
                text = f.read()
        except OSError as e:
            raise ConfigError(f"cannot read config: {e.strerror}", None, str(path)) from None
        return cls.parse(text, source=str(path))

    def matrix(self) -> CoxeterMatrix:
        return CoxeterMatrix.from_rows(self.rows)

    def build(self) -> CoxeterSystem:
        return build_system(self.matrix(), self.generators, name=self.name)

    def serialize(self) -> str:
        """Normalized text: fixed key order, single spaces, options sorted."""
        lines = [f"name = {self.name}", "generators = " + " ".join(self.generators)]
        for row in self.rows:
            lines.append("row = " + " ".join(format_label(x) for x in row))
        for key in sorted(self.options):
            lines.append(f"{key} = {self.options[key]}")
        return "\n".join(lines) + "\n"

    def apply_to(self, config: ReflectraceConfig) -> ReflectraceConfig:
        """A copy of `config` with this system's options laid over it."""
        return replace(config, **self.options)


# --- shipped systems ---

def _systems_dir() -> Path:
    """
    Locate the shipped system configs using importlib.resources.
    Falls back to the source tree when the package data is not installed.
    """
    try:
        if hasattr(resources, "files"):
            candidate = resources.files("reflectrace").joinpath("data", "systems")
            if candidate.is_dir():
                return Path(str(candidate))
    except (ModuleNotFoundError, TypeError, AttributeError):
        pass
    return Path(os.path.dirname(os.path.abspath(__file__))) / "data" / "systems"


def list_shipped_systems() -> List[Tuple[str, Path]]:
    return sorted((p.stem, p) for p in _systems_dir().glob("*.cfg"))


def resolve_system_path(spec: str) -> str:
    """A path as given, or the shipped config of that name."""
    if os.path.exists(spec):
        return spec
    stem = spec[:-4] if spec.endswith(".cfg") else spec
    shipped = _systems_dir() / f"{stem}.cfg"
    if shipped.exists():
        return str(shipped)
    raise ConfigError(f"no such config file or shipped system: {spec}", None, spec)


def load_system(spec: str) -> SystemConfig:
    return SystemConfig.load(resolve_system_path(spec))
