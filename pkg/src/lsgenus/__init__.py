"""Cohomological category functions on finite simplicial complexes.

The package computes cohomology lengths of open pieces (modelled as
up-closed simplex families), builds colored star covers, localizes the
preimage of a point under a simplicial map by iterated subdivision, and
bounds the genus of free involutions.  See the README for the CLI.
"""

__version__ = "0.1.0"
