"""Reusable data-structure building blocks."""

from .cascade import CASCADING, PLAIN, CascadeChain
from .concat_queue import ConcatQueue, Handle
from .dsu import DisjointSet
from .pst import PrioritySearchTree, pst_build_sorted, pst_ray_shoot
from .stabmin import StabbingMinSet
from .wbb import WbbNode, WeightBalancedBase, build_balanced

__all__ = [
    "CASCADING", "PLAIN", "CascadeChain", "ConcatQueue", "Handle",
    "DisjointSet", "PrioritySearchTree", "pst_build_sorted", "pst_ray_shoot",
    "StabbingMinSet", "WbbNode", "WeightBalancedBase", "build_balanced",
]
