"""Exact mod-p linear algebra for kernel bundles of matrices of linear forms
on projective 3-space: cohomology tables, quotient-rank strata, and
space-curve diagnostics."""

__version__ = "0.1.0"
