"""Exceptions shared by the graph core and the orientation engine"""

from typing import Optional


class OrientationError(Exception):
    """Base class for every error raised by this project"""
    pass


class GraphFormatError(OrientationError, ValueError):
    """Malformed edge-list / orientation / forbidden-set text"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GraphInvariantError(OrientationError, ValueError):
    """A Graph, Orientation or generator spec violates its invariants"""
    pass


class NonSimpleForbiddenSetError(OrientationError, ValueError):
    """Forbidden set contains C3 or K1K2 where only B1, B2, B3, T3 are allowed"""
    pass


class OracleCapExceeded(OrientationError):
    """Brute-force enumeration requested above the configured edge cap"""
    pass


class PathPreconditionError(OrientationError):
    """(x,y) and (y,x) are in different strong components"""
    pass


class WalkLabelError(OrientationError, ValueError):
    """Contradicting path or walk labels are invalid"""
    pass


class ObstructionInvariantError(OrientationError):
    """Internal cross-check of an extracted obstruction failed"""
    pass
