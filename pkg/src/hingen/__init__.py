"""Synthetic heterogeneous information networks with ground-truth explanation motifs."""

from .graph import GraphError, InvariantError, TypedGraph
from .params import ConfigError, GeneratorParams
from .pipeline import GenerationResult, StageError, generate
from .presets import get_preset, reference_graph
from .reference import ReferenceProfile, estimate_params, ingest_reference, profile
from .schema import EdgeType, Schema, SchemaError, make_schema

__all__ = [
    "ConfigError",
    "EdgeType",
    "GenerationResult",
    "GeneratorParams",
    "GraphError",
    "InvariantError",
    "ReferenceProfile",
    "Schema",
    "SchemaError",
    "StageError",
    "TypedGraph",
    "estimate_params",
    "generate",
    "get_preset",
    "ingest_reference",
    "make_schema",
    "profile",
    "reference_graph",
]
