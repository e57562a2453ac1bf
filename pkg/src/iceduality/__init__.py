"""Exact workbench for colored lattice models, their partition functions and the identities they satisfy."""

__version__ = "0.1.0"
