"""Degenerate vertex partitions of bounded-degree graphs."""

from .brooks import (
    EligiblePair,
    ForestPartition,
    allocate_classes,
    degenerate_partition,
    find_eligible_pair,
    forest_partition,
)
from .counter import OpCounter
from .degeneracy import Partition, PartitionSpec, validate_partition
from .graph import Graph, named_graph, parse_graph, random_regular, serialize_graph

__all__ = [
    "EligiblePair", "ForestPartition", "Graph", "OpCounter", "Partition", "PartitionSpec",
    "allocate_classes", "degenerate_partition", "find_eligible_pair", "forest_partition",
    "named_graph", "parse_graph", "random_regular", "serialize_graph", "validate_partition",
]
