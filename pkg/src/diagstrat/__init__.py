"""Exact computations in cyclotomic Brauer and oriented Brauer categories."""

from .errors import DiagstratError
from .params import make_config, CategoryConfig, Content

__all__ = ["DiagstratError", "make_config", "CategoryConfig", "Content"]
__version__ = "0.1.0"
