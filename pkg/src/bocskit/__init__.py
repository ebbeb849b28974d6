"""Exact-arithmetic toolkit for stratified algebras and bocses.

The package builds finite-dimensional basic algebras from quivers with
relations, computes their (properly) standard modules, transfers the
A-infinity structure of truncated Ext-algebras, assembles the associated
bocs and its right Burt-Butler algebra, and runs a verification pipeline
over the whole construction.  All arithmetic is exact (rational).
"""

__version__ = "0.1.0"
