"""Numerical workbench for reverse Cauchy-Schwarz type inequalities under positive linear maps."""

__version__ = "0.1.0"
