"""Shared exception types.

The CLI maps these onto exit codes: input problems exit 1, configuration
problems exit 2, anything else exit 3.
"""

from __future__ import annotations


class InputError(ValueError):
    """Malformed or unreadable input data (records, files, edge lists)."""


class ConfigError(ValueError):
    """Invalid parameters, thresholds, ranges or pipeline configuration."""
