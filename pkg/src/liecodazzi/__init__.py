"""Exact symbolic engine for connections, curvature and Codazzi-type
structures on the seven three-dimensional Lorentzian Lie group families."""

__version__ = "0.1.0"
