"""Service runner: evl-serve."""

from __future__ import annotations

import argparse
import sys

import uvicorn

from .app import create_app
from .config import load_config


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evl-serve",
        description="Serve the subtitle annotation-enrichment engine over HTTP",
    )
    parser.add_argument("--config", help="Path to a JSON config file")
    parser.add_argument("--replay", metavar="FIXTURE_DIR", help="Run hermetically from recorded fixtures")
    parser.add_argument("--live", action="store_true", help="Use live upstream APIs")
    parser.add_argument("--state-dir", help="Directory for caches and the notes store")
    parser.add_argument("--policy", help="Path to a safety policy file")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8000)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {
        "fixture_dir": args.replay,
        "state_dir": args.state_dir,
        "safety_policy_path": args.policy,
    }
    if args.live:
        overrides["mode"] = "live"
    elif args.replay:
        overrides["mode"] = "replay"
    try:
        config = load_config(args.config, **overrides)
    except (OSError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    app = create_app(config)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


if __name__ == "__main__":
    sys.exit(main())
