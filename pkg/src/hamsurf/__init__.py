"""Verifier for Hamiltonian surfaces in order-2 triangle/lozenge complexes."""

__version__ = "0.1.0"
