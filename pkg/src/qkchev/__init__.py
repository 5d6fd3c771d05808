"""Chevalley and Monk formulas for semi-infinite flag manifolds, computed through graded characters."""

from .rootdata import RootSystem, Weight, root_system

__all__ = ["RootSystem", "Weight", "root_system"]
__version__ = "0.1.0"
