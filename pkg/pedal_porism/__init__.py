"""Pedal, negative-pedal and polar porisms for triangles."""

__version__ = "0.0.1"
