"""Exact lattice counts and Masur-Veech volumes for pillowcase-type strata."""

__version__ = "0.1.0"
