"""Service configuration: defaults, config file, environment, CLI flags.

Precedence, lowest to highest: built-in defaults, then the JSON config
file, then MATHQUEST_* environment variables, then CLI flags.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from .errors import ConfigurationError
from .sessions import Stage, SessionConfig

ENV_PREFIX = "MATHQUEST_"

DEFAULT_HOST = "127.0.0.1"
DEFAULT_PORT = 8000
DEFAULT_DATA_DIR = Path("mathquest-data")
DEFAULT_BANDS = "equal-width"


@dataclass(frozen=True)
class ServiceConfig:
    host: str = DEFAULT_HOST
    port: int = DEFAULT_PORT
    data_dir: Path = DEFAULT_DATA_DIR
    session: SessionConfig = field(default_factory=SessionConfig)
    catalog_file: Path | None = None  # None -> packaged default
    template_file: Path | None = None
    message_file: Path | None = None
    bands: str = DEFAULT_BANDS
    seed: int | None = None
    frontend_dir: Path | None = None  # serve the game client from here

    def __post_init__(self):
        if not 1 <= self.port <= 65535:
            raise ConfigurationError(f"port must be in [1, 65535], got {self.port}")


def _session_from_dict(data: dict) -> SessionConfig:
    questions = dict(SessionConfig().questions_per_stage)
    for name, count in data.get("questions_per_stage", {}).items():
        try:
            questions[Stage(name)] = int(count)
        except ValueError as exc:
            raise ConfigurationError(f"unknown stage {name!r} in config") from exc
    return SessionConfig(
        questions_per_stage=questions,
        time_limit_seconds=int(
            data.get("time_limit_seconds", SessionConfig().time_limit_seconds)
        ),
        pass_threshold_percent=int(
            data.get("pass_threshold_percent", SessionConfig().pass_threshold_percent)
        ),
    )


def _read_config_file(path: Path) -> dict:
    if not path.exists():
        raise ConfigurationError(f"config file not found: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"config file is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigurationError("config file must hold a JSON object")
    return data


def load_service_config(
    cli: Mapping[str, object] | None = None,
    env: Mapping[str, str] | None = None,
) -> ServiceConfig:
    """Merge all configuration sources into a validated ServiceConfig."""
    cli = dict(cli or {})
    env = dict(env or {})

    def env_get(name: str) -> str | None:
        return env.get(ENV_PREFIX + name)

    config_path = cli.get("config") or env_get("CONFIG")
    file_data: dict = {}
    if config_path:
        file_data = _read_config_file(Path(config_path))

    def pick(cli_key: str, env_key: str, file_key: str, default):
        if cli.get(cli_key) is not None:
            return cli[cli_key]
        if env_get(env_key) is not None:
            return env_get(env_key)
        if file_data.get(file_key) is not None:
            return file_data[file_key]
        return default

    host = str(pick("host", "HOST", "host", DEFAULT_HOST))
    try:
        port = int(pick("port", "PORT", "port", DEFAULT_PORT))
    except ValueError as exc:
        raise ConfigurationError(f"port must be an integer: {exc}") from exc
    data_dir = Path(str(pick("data_dir", "DATA_DIR", "data_dir", DEFAULT_DATA_DIR)))
    bands = str(pick("bands", "BANDS", "bands", DEFAULT_BANDS))
    raw_seed = pick("seed", "SEED", "seed", None)
    try:
        seed = None if raw_seed is None else int(raw_seed)
    except ValueError as exc:
        raise ConfigurationError(f"seed must be an integer: {exc}") from exc

    def file_path(key: str) -> Path | None:
        value = file_data.get(key)
        return Path(str(value)) if value is not None else None

    raw_frontend = pick("frontend_dir", "FRONTEND_DIR", "frontend_dir", None)
    frontend_dir = Path(str(raw_frontend)) if raw_frontend is not None else None

    session = _session_from_dict(file_data.get("session", {}))
    return ServiceConfig(
        host=host,
        port=port,
        data_dir=data_dir,
        session=session,
        catalog_file=file_path("catalog_file"),
        template_file=file_path("template_file"),
        message_file=file_path("message_file"),
        bands=bands,
        seed=seed,
        frontend_dir=frontend_dir,
    )
