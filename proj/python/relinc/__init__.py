"""Relative incompatibility of quantum measurements."""

from ._relinc import *  # noqa: F401,F403
from ._relinc import __doc__  # noqa: F401

__version__ = "0.1.0"
