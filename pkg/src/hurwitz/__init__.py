"""Hurwitz braid actions on Nielsen classes of finite permutation groups."""

from pathlib import Path

__version__ = "0.1.0"

DATA = Path(__file__).resolve().parent / "data"
