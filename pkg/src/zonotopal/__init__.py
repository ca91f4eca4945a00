"""Exact computations with zonotopal algebras of rational vector configurations."""

from __future__ import annotations

from .errors import (
    DegreeBoundViolated,
    GuardExceeded,
    IndexOutOfRange,
    NegativeMultiplicity,
    NonIntegerColumns,
    NonSquare,
    NonWitnessableIsoMatroids,
    NotNilpotent,
    NotUnimodular,
    ParseError,
    RandomnessExhausted,
    RankDeficient,
    SizeMismatch,
    ZeroColumn,
    ZonotopalError,
)
from .graphs import Graph, count_forests, count_spanning_trees, incidence_matrix
from .linalg import QMatrix, det, format_rational, inverse, nullspace, parse_rational, rank, solve
from .matroid import (
    TuttePoly,
    VectorConfig,
    central_reduce,
    is_totally_unimodular,
    load_config,
    matroid_isomorphic,
    subset_rank,
    tutte,
)
from .power_ideal import GradedSeries, hilbert_series, ideal_generators, tutte_specialization
from .reconstruction import ProjMultiset, ProjPoint, candidate_set, reconstruct
from .squarefree import LengthOracle, linear_length, make_length_oracle, subalgebra_hilbert
from .zequiv import ZResult, ZWitness, unimodular_equiv_via_matroid, verify_witness, z_equivalent
from .zonotope import Zonotope, facet_data, interior_lattice_points, lattice_points, volume

__version__ = "0.1.0"
