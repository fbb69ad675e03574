"""Push-pull rumor spreading on complete bipartite graphs.

Thin re-export of the compiled ``_core`` extension.
"""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import __version__, execute as _execute


def run_command(command, **parameters):
    """Run a CLI command in-process; returns (output text, exit code)."""
    return _execute(command, _json.dumps(parameters))
