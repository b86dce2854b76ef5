"""Trilinear oscillatory integrals, polynomial quotient norms, and decay experiments."""

from ._oscint import *  # noqa: F401,F403
from ._oscint import __version__  # noqa: F401
