"""Exact characters of affine Kac-Moody modules at the critical level."""
__version__ = "0.1.0"
