# treecross/__init__.py
"""Crossings of uniform random labelled trees drawn in convex position."""

__version__ = "0.1.0"

# Bumped whenever a CSV column or JSON member changes meaning.
REPORT_FORMAT_VERSION = 1
