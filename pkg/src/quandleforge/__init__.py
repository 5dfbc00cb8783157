"""Finite racks and quandles: construction, invariants and classification."""

from .classify import (
    QuandleDatabase,
    brute_force_indecomposable,
    builtin_transitive_groups,
    classify_indecomposable,
    db_read,
    db_write,
    load_group_db,
    small_quandle,
)
from .construct import (
    affine_quandle_fq,
    affine_quandle_zn,
    conjugation_rack,
    dihedral_quandle,
    homogeneous_quandle,
    make_field,
)
from .envgroup import abelian_invariants, enveloping_presentation, finite_enveloping_order, todd_coxeter
from .homology import rack_homology, torsion_generators
from .perm import Permutation, PermGroup, alternating_group, parse_cycles, symmetric_group
from .rack import (
    RackError,
    RackTable,
    canonical_form,
    components,
    find_isomorphism,
    inner_group,
    is_indecomposable,
    read_rack,
    validate_rack,
    write_rack,
)
from .snf import smith_normal_form
from .typed import is_type_d

__version__ = "0.1.0"
