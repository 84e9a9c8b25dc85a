"""Finite frames and discrete Gabor systems."""

from ._framelab import *  # noqa: F401,F403
from ._framelab import FramelabError, __doc__  # noqa: F401
