"""Clique-sum decompositions: data model, validation, repairs, K3,3-free construction, file I/O."""

from .io import parse_decomposition, read_decomposition, serialize_decomposition, write_decomposition
from .k33 import decompose_k33free
from .repair import (TreeDecomposition, check_tree_decomposition, exact_tree_decomposition,
                     face_repair, split_with_treedec)
from .tree import DecompositionTree, Node, Violation, compose, require_valid, validate

__all__ = [
    "DecompositionTree", "Node", "TreeDecomposition", "Violation",
    "check_tree_decomposition", "compose", "decompose_k33free", "exact_tree_decomposition",
    "face_repair", "parse_decomposition", "read_decomposition", "require_valid",
    "serialize_decomposition", "split_with_treedec", "validate", "write_decomposition",
]
