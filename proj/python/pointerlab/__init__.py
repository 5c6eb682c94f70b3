"""Pointer-state decoherence toolkit (Python bindings)."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import run as _run


def run(command, config, seed=None, threads=1):
    """Run a CLI subcommand. ``config`` may be a dict or a JSON string."""
    text = config if isinstance(config, str) else _json.dumps(config)
    return _run(command, text, seed, threads)
