"""Command line entry point: parse flags, build the config, serve."""

from __future__ import annotations

import argparse
import os
import sys
from typing import Mapping, Sequence

from .config import ServiceConfig, load_service_config
from .errors import ConfigurationError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mathquest",
        description="Arithmetic practice service for the game client",
    )
    parser.add_argument("--host", help="bind address (default 127.0.0.1)")
    parser.add_argument("--port", type=int, help="listen port (default 8000)")
    parser.add_argument("--data-dir", dest="data_dir", help="learner data directory")
    parser.add_argument("--config", help="path to a JSON config file")
    parser.add_argument("--seed", type=int, help="deterministic seed for test runs")
    parser.add_argument("--bands", help="interpretation bands preset name")
    parser.add_argument(
        "--frontend-dir", dest="frontend_dir", help="static game client to serve at /"
    )
    return parser


def config_from_args(
    argv: Sequence[str] | None = None, env: Mapping[str, str] | None = None
) -> ServiceConfig:
    args = build_parser().parse_args(argv)
    cli_values = {
        "host": args.host,
        "port": args.port,
        "data_dir": args.data_dir,
        "config": args.config,
        "seed": args.seed,
        "bands": args.bands,
        "frontend_dir": args.frontend_dir,
    }
    return load_service_config(cli_values, env if env is not None else os.environ)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        config = config_from_args(argv)
        from .service import create_app

        app = create_app(config)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    import uvicorn

    uvicorn.run(app, host=config.host, port=config.port)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
