"""Slow-light / matter-wave hybrid Sagnac gyroscope model (C++ core)."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import __version__, run_command as _run_command


def run(command, config=None):
    """Run a tool command with a config dict; returns (envelope dict, table or None)."""
    out = _run_command(command, _json.dumps(config or {}))
    envelope = _json.loads(out["envelope"])
    table = None
    if "header" in out:
        table = {"header": list(out["header"]), "rows": [list(r) for r in out["rows"]]}
    return envelope, table
