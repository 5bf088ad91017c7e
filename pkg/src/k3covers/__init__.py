"""Exact lattice computations for smooth double covers of K3 surfaces."""

from .errors import (
    DegenerateLatticeError,
    DimensionError,
    DomainError,
    InadmissibleError,
    InvalidGlueError,
    K3CoversError,
    ResourceError,
    ShapeError,
    UnknownIdentifierError,
)
from .exactlin import IntMatrix, determinant, inertia, rank, smith_normal_form
from .lattice import (
    Lattice,
    direct_sum,
    discriminant,
    discriminant_group,
    from_gram,
    glue_overlattice,
    length,
    rescale,
    two_elementary_invariants,
)
from .evensets import BinaryCode, code_of, codewords, minimal_primitive_options, validate_even_code
from .k3lattices import (
    build_even_set_lattice,
    build_Ln,
    build_standard,
    derive_candidate_list,
    embedding_status,
    fixed_locus_nonsymplectic,
    ns_candidates,
)
from .covers import (
    BranchConfig,
    alternative_even_sets,
    bidouble_pg,
    classify_branch,
    existence,
    genus1_branch_points,
    invariants_of_X,
    projection_residual,
    unstable_fiber_types,
)
from .verification import run_checks

__version__ = "0.1.0"
