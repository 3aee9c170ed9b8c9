"""Simulate event logs from process models mined out of event logs.

Text in, text out: event logs are CSV strings, nets are PNML strings and
performance profiles use the line format written by ``discover``.
"""

from ._logsim import Columns, LogsimError, __version__, discover, simulate, simulate_log

__all__ = ["Columns", "LogsimError", "__version__", "discover", "simulate", "simulate_log"]
