"""Partitions with r-coloured odd parts: q-series, congruence scans and
the modular-form checks behind them."""

from .partitions import a_r, a_r_series, c_series
from .series import TruncatedSeries

__all__ = ["TruncatedSeries", "a_r", "a_r_series", "c_series"]
__version__ = "0.1.0"
