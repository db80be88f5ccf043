"""Exact computations with generalised Khovanov arc algebras."""
from __future__ import annotations

from .core_combinatorics import Block, Frame, Weight

__version__ = "0.1.0"
__all__ = ["Block", "Frame", "Weight", "__version__"]
