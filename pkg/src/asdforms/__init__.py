"""Atkin and Swinnerton-Dyer congruences for weight 3 noncongruence cusp forms."""

__version__ = "0.1.0"
