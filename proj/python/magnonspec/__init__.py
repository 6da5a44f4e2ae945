"""Spectral analysis of Toeplitz-plus-potential operators on ordered lattices."""

from ._core import *  # noqa: F401,F403
from ._core import NumericalError, __doc__  # noqa: F401

__version__ = "0.1.0"
