"""Circular wirelength of hypercubes: exact combinatorics and certification.

Vertices of Q_n are integers 0..2^n-1 whose binary word x_1...x_n has x_1 as
the most significant bit.  Host labels of embeddings are 1-based.
"""

from hwl.cube import (
    VertexSet,
    boundary_size,
    canonical_cubal,
    half_plane,
    split_by_axis,
    theta_half_type,
    theta_opt,
    theta_table,
    type_of,
)
from hwl.embed import (
    Embedding,
    PartitionPath,
    TypeSequence,
    embedding_of,
    gray_embedding,
    gray_identities_check,
    partition_path,
    type_sequence,
    wirelength,
)

__version__ = "0.1.0"

__all__ = [
    "Embedding",
    "PartitionPath",
    "TypeSequence",
    "VertexSet",
    "boundary_size",
    "canonical_cubal",
    "embedding_of",
    "gray_embedding",
    "gray_identities_check",
    "half_plane",
    "partition_path",
    "split_by_axis",
    "theta_half_type",
    "theta_opt",
    "theta_table",
    "type_of",
    "type_sequence",
    "wirelength",
]
