"""Exact second cohomology and extensions of the linear cycle sets
(Z_{p^eta}, +, i.j = (1 - p^nu i) j) by trivial abelian coefficient groups."""

__version__ = "0.1.0"
