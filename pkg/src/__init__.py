"""qgase - Average scattering entropy of open quantum graphs."""

__version__ = "0.1.0"
