"""Divisor tables, summatory functions and the table cache."""

from .table import DivisorTable, build_table, hyperbola_sum_d
from .summatory import (
    SummatoryResult,
    WindowEndpoints,
    halved_window_sum,
    sum_alt_d,
    sum_alt_d_sqrt,
    sum_alt_d_sqrt_halved,
    sum_alt_d_sqrt_window,
    sum_d3,
    sum_d3_window,
    window_endpoints,
)
from .cache import load_table, read_header, save_table

__all__ = [
    'DivisorTable', 'build_table', 'hyperbola_sum_d',
    'SummatoryResult', 'WindowEndpoints', 'halved_window_sum', 'window_endpoints',
    'sum_alt_d', 'sum_alt_d_sqrt', 'sum_alt_d_sqrt_halved', 'sum_alt_d_sqrt_window',
    'sum_d3', 'sum_d3_window',
    'load_table', 'read_header', 'save_table',
]
