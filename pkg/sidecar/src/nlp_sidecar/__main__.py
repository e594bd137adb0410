"""Service launcher; NLP_SIDECAR_HOST and NLP_SIDECAR_PORT pick the bind address."""

import os
import sys

import uvicorn

from .app import create_app


def main() -> None:
    raw_port = os.environ.get("NLP_SIDECAR_PORT", "8601")
    try:
        port = int(raw_port)
    except ValueError:
        sys.exit(f"nlp-sidecar: NLP_SIDECAR_PORT must be an integer, got {raw_port!r}")
    host = os.environ.get("NLP_SIDECAR_HOST", "127.0.0.1")
    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
