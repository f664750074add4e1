"""Symbolic toolkit for admissible sequences, i-boxes and KR cluster seeds."""

from iboxkit.cartan import RootData, root_data

__all__ = ["RootData", "root_data"]
