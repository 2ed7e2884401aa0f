"""Batch command-line interface for hardy_moments.

Commands are dispatched through a chain of handlers: verify and calibrate
run moment experiments over a parameter grid, sweep runs a JSON plan of
several grids, and table builds a divisor-table cache file.
"""

__version__ = "0.1.0"
