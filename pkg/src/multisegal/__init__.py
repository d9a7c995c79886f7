"""Finite models of multisimplicial Segal objects and iterated bar constructions."""
