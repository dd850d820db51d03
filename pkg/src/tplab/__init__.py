"""Tempered fractional Gaussian processes: kernels, sampling,
estimation, and numerical validation."""

__version__ = "0.1.0"
