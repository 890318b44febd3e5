"""Bundled molecular Hamiltonian tables (Hartree)."""
