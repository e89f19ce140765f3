"""Dequantization lab: classical Fourier regression vs. quantum Fourier models."""

__version__ = "0.1.0"
