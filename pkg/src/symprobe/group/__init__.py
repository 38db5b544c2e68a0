"""Permutation-group membership by sifting."""

from .schreier import SchreierStructure, new_structure

__all__ = ["SchreierStructure", "new_structure"]
