"""Exact toolkit for polytopic general probabilistic theories."""

from __future__ import annotations

__version__ = "0.1.0"
