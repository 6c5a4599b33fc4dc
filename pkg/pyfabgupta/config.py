# pyfabgupta/config.py

"""
Configuration management for pyfabgupta.

Stores run defaults locally at:
    ~/.pyfabgupta/config.json        (directory overridable via PYFABGUPTA_HOME)

Supports:
    - typed `config set KEY VALUE` (type taken from the built-in default)
    - resolution of a RunConfig: flag > environment > config file > default
"""

import json
import os
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Dict, Optional

import click

# ---------------------------------------------------------------------
# Paths
# ---------------------------------------------------------------------

CONFIG_DIR = Path(os.environ.get("PYFABGUPTA_HOME", Path.home() / ".pyfabgupta"))
CONFIG_FILE = CONFIG_DIR / "config.json"

CACHE_ENV = "FG_CACHE_DIR"

# ---------------------------------------------------------------------
# Defaults
# ---------------------------------------------------------------------

def _default_config() -> dict:
    return {
        "max_len": 9,
        "workers": 1,
        "signature_depth": 6,
        "max_candidates": 2_000_000,
        "seed": 0,
        "kmax": 100,
        "cache_dir": None,
        "quiet": False,
    }


# keys whose default is None still need a type for `config set`
_NULLABLE_TYPES = {"cache_dir": str}

# ---------------------------------------------------------------------
# Internal helpers
# ---------------------------------------------------------------------

def _ensure_config_dir():
    CONFIG_DIR.mkdir(parents=True, exist_ok=True)


def load_config() -> dict:
    cfg = _default_config()
    if not CONFIG_FILE.exists():
        return cfg

    try:
        stored = json.loads(CONFIG_FILE.read_text())
    except Exception:
        return cfg

    if isinstance(stored, dict):
        cfg.update({k: v for k, v in stored.items() if k in cfg})
    return cfg


def save_config(cfg: dict):
    _ensure_config_dir()

    tmp = CONFIG_FILE.with_suffix(".tmp")
    tmp.write_text(json.dumps(cfg, indent=2, sort_keys=True))
    tmp.replace(CONFIG_FILE)


def _coerce(key: str, raw: str) -> Any:
    defaults = _default_config()
    if key not in defaults:
        raise click.ClickException(
            f"Unknown config key {key!r}. Known keys: {', '.join(sorted(defaults))}"
        )
    kind = _NULLABLE_TYPES.get(key, type(defaults[key]))
    if kind is bool:
        lowered = raw.strip().lower()
        if lowered in ("1", "true", "yes", "on"):
            return True
        if lowered in ("0", "false", "no", "off"):
            return False
        raise click.ClickException(f"{key} expects true/false, got {raw!r}")
    try:
        value = kind(raw)
    except ValueError:
        raise click.ClickException(f"{key} expects {kind.__name__}, got {raw!r}")
    if kind is int and value < (1 if key in ("workers", "kmax", "signature_depth") else 0):
        raise click.ClickException(f"{key} is out of range: {value}")
    return value

# ---------------------------------------------------------------------
# Run configuration
# ---------------------------------------------------------------------

@dataclass
class RunConfig:
    """Everything a command needs; embedded in every JSON report."""

    command: str
    max_len: int
    depth: int
    workers: int
    cache_path: Optional[str]
    seed: int
    output: Optional[str]
    format: str
    max_candidates: Optional[int] = None
    kmax: int = 100
    signature_depth: int = 6
    quiet: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def resolve_run_config(command: str, fmt: str, **flags) -> RunConfig:
    """Merge explicit flags (None = unset) over FG_CACHE_DIR, the config file and defaults."""
    cfg = load_config()

    def pick(name, default=None):
        value = flags.get(name)
        if value is not None:
            return value
        return cfg.get(name, default)

    cache = flags.get("cache") or os.environ.get(CACHE_ENV) or cfg.get("cache_dir")
    run = RunConfig(
        command=command,
        max_len=pick("max_len"),
        depth=flags.get("depth") if flags.get("depth") is not None else 3,
        workers=pick("workers"),
        cache_path=str(cache) if cache else None,
        seed=pick("seed"),
        output=flags.get("out"),
        format=fmt,
        max_candidates=pick("max_candidates"),
        kmax=pick("kmax"),
        signature_depth=pick("signature_depth"),
        quiet=bool(cfg.get("quiet")),
    )
    if run.max_len < 0:
        raise click.BadParameter(f"--max-len must be >= 0, got {run.max_len}")
    if run.workers < 1:
        raise click.BadParameter(f"--workers must be >= 1, got {run.workers}")
    if run.signature_depth < 1:
        raise click.BadParameter(f"--signature-depth must be >= 1, got {run.signature_depth}")
    return run

# ---------------------------------------------------------------------
# Click command group
# ---------------------------------------------------------------------

@click.group(help="Manage pyfabgupta configuration.")
def config():
    pass


@config.command("show")
def config_show():
    cfg = load_config()

    click.echo("pyfabgupta configuration:")
    for k in sorted(cfg):
        value = cfg[k]
        click.echo(f"  {k + ':':<17}{'(not set)' if value is None else value}")
    click.echo(f"  {'config file:':<17}{CONFIG_FILE}")


@config.command("set")
@click.argument("key")
@click.argument("value")
def config_set(key: str, value: str):
    cfg = load_config()
    cfg[key] = _coerce(key, value)
    save_config(cfg)

    click.echo(f"{key} set to {cfg[key]}")


@config.command("unset")
@click.argument("key")
def config_unset(key: str):
    defaults = _default_config()
    if key not in defaults:
        raise click.ClickException(f"Unknown config key {key!r}.")

    cfg = load_config()
    cfg[key] = defaults[key]
    save_config(cfg)

    click.echo(f"{key} reset to default ({defaults[key]})")


@config.command("reset")
def config_reset():
    if not click.confirm("Reset ALL pyfabgupta configuration?"):
        return

    save_config(_default_config())
    click.echo("Configuration reset to defaults.")
