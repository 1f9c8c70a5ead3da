"""Canonization and isomorphism testing for chordal claw-free graphs."""

from .canonizer import CanonResult, canonize, canonize_connected, isomorphic, verify_certificate
from .errors import NotConnected, NotInClass, ParseError, StructuralError, WitnessError
from .graph_core import Graph

__all__ = [
    "CanonResult",
    "Graph",
    "NotConnected",
    "NotInClass",
    "ParseError",
    "StructuralError",
    "WitnessError",
    "canonize",
    "canonize_connected",
    "isomorphic",
    "verify_certificate",
]
