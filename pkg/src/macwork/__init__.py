"""Exact workbench for transformed Macdonald polynomials, the derivative
modules D_mu, and polygraph arrangements."""

__version__ = "0.1.0"
