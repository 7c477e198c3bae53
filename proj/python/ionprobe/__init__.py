"""Standing-wave fringe visibility models for a single trapped ion.

Thin wrapper around the compiled ``ionprobe._core`` extension; every
public symbol comes from there.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
