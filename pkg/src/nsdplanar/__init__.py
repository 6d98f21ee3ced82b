"""Neighbour-sum-distinguishing edge colourings of planar graphs.

Exact search, configuration detection and reduction, and a discharging
checker with exact rational charges.
"""

from __future__ import annotations

from .configurations import ConfigurationWitness, detect_all, verify_witness
from .construct import ReductionTrace, construct_nsd
from .discharging import (
    ChargeLedger,
    TrashPartition,
    apply_rules,
    charge_identity,
    compute_trash,
    discharge,
    initial_charges,
    verify_balance,
)
from .embedding import RotationSystem, embed, faces, plane_faces, random_planar
from .errors import (
    BudgetExhausted,
    EmbeddingError,
    ExtensionFailed,
    FormatError,
    GraphError,
    InvariantBreach,
    IsolatedEdgeError,
    NsdError,
    ParameterError,
)
from .graph import EdgeColouring, Graph, GraphOrderKey, is_nsd, is_proper, weighted_degree
from .lemma import lemma1_extensions, lemma1_lists
from .solver import SolveBudget, chi_sum_exact, extend_colouring, find_nsd_colouring

__version__ = "0.1.0"

__all__ = [
    "BudgetExhausted", "ChargeLedger", "ConfigurationWitness", "EdgeColouring",
    "EmbeddingError", "ExtensionFailed", "FormatError", "Graph", "GraphError",
    "GraphOrderKey", "InvariantBreach", "IsolatedEdgeError", "NsdError", "ParameterError",
    "ReductionTrace", "RotationSystem", "SolveBudget", "TrashPartition", "apply_rules",
    "charge_identity", "chi_sum_exact", "compute_trash", "construct_nsd", "detect_all", "discharge",
    "embed", "extend_colouring", "faces", "find_nsd_colouring", "initial_charges",
    "is_nsd", "is_proper", "lemma1_extensions", "lemma1_lists", "plane_faces",
    "random_planar", "verify_balance", "verify_witness", "weighted_degree",
]
