"""Run the REST service: python -m riskpipe.service [--host ...] [--port ...]"""

from __future__ import annotations

import argparse
import os


def main(argv: list[str] | None = None) -> None:
    parser = argparse.ArgumentParser(prog="riskpipe.service")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8000)
    parser.add_argument(
        "--data", default=os.environ.get("RISKPIPE_DATA", "./riskpipe-data"),
        help="data directory for persisted models",
    )
    parser.add_argument(
        "--max-joint", type=int, default=None,
        help="state-space cap for inference requests",
    )
    args = parser.parse_args(argv)

    import uvicorn

    from .api import DEFAULT_MAX_JOINT, create_app

    app = create_app(
        data_dir=args.data,
        max_joint=args.max_joint or DEFAULT_MAX_JOINT,
    )
    uvicorn.run(app, host=args.host, port=args.port)


if __name__ == "__main__":
    main()
