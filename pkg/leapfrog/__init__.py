"""Leapfrogging vortex rings: kernel, filament dynamics and spectral numerics."""

__version__ = "0.1.0"
