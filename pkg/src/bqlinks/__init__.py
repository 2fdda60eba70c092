"""Biquandle coloring, cocycle state-sum and index invariants of arrowed link diagrams."""
from .abelian import AbelianGroup, GroupRingElement
from .biquandle import (
    FiniteBiquandle,
    Permutation,
    admissible_automorphisms,
    automorphisms,
    is_admissible,
    is_homomorphism,
)
from .cohomology import (
    Cocycle2,
    boundary_matrix,
    cohomology,
    degenerate_indices,
    delta1,
    is_coboundary,
    is_cocycle2,
    omega5_compatible,
    quotient_boundary,
    state_sum,
)
from .coloring import coloring_count_formula_check, count_colorings, solve
from .diagram import Arrow, ArrowedDiagram, Half
from .errors import BqError, ContractError, FormatError, InternalConsistencyError, MoveError
from .index import IndexProfile, crossing_indices, gx_abelianization, index_profile, specialize
from .moves import Move, apply_move, random_equivalent
from .snf import smith_normal_form

__all__ = [name for name in dir() if not name.startswith("_")]
