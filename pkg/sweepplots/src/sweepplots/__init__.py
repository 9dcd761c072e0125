"""Sweep-result charting for the link scheduling experiments."""

from .render import SweepRow, SweepTable, curve_spec, main, render

__version__ = "0.1.0"

__all__ = ["SweepRow", "SweepTable", "curve_spec", "main", "render"]
