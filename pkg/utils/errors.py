# Copyright 2026 Samson. All Rights Reserved.
# =============================================================================

"""Exceptions for the GTD graph toolkit.
"""


class GtdGraphError(Exception):
    """Base class of every error raised by the toolkit."""


class ConfigError(GtdGraphError, ValueError):
    """Invalid mapping, flag or configuration value."""


class ParseError(GtdGraphError, ValueError):
    """Malformed input file.

    Args:
        message: A string.
        row: An integer or None,
            1-based physical line number (the header is line 1).
    """
    def __init__(self, message, row=None):
        if row is not None:
            message = "row %d: %s" % (row, message)
        super().__init__(message)
        self.row = row


class DataError(GtdGraphError, ValueError):
    """Well-formed input that violates a data invariant."""
    def __init__(self, message, event_id=None):
        super().__init__(message)
        self.event_id = event_id


class GraphError(GtdGraphError, ValueError):
    pass


class SelfLoopError(GraphError):
    pass


class MissingNodeError(GraphError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class NotBipartiteError(GraphError):
    pass


class EmptyGraphError(GraphError):
    pass


class UndefinedMetricError(GtdGraphError, ArithmeticError):
    """A metric has no defined value on the given graph."""
