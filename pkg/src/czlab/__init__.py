"""Exact index iteration calculus for symplectic paths and rotation spectra of CP^n."""

from .errors import *  # noqa: F401,F403
from .report import Report
from .rotations import *  # noqa: F401,F403
from .spectral import *  # noqa: F401,F403
from .torus import *  # noqa: F401,F403

__version__ = "0.1.0"
