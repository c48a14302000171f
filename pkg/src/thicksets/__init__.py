"""Exact thick-set calculus, Bohr sets from irrational rotations and power
subgroups of the integer Heisenberg group."""

__version__ = "0.1.0"
