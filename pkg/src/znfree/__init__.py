"""Computing in finitely generated regular Z^n-free groups.

Towers of HNN-extensions over a free group: normal forms, the Z^n-valued
Lyndon length function and its axioms, abelian-subgroup basis reduction,
Key-Lemma integer weight systems, and the torus-gluing space blueprint.
"""

from .abelian import AbelianBasis, HeightProfile, combine_equal_height, is_r_bounded, reduce_basis
from .complex import SpaceBlueprint, build_blueprint, emit, fundamental_group, verify_gluing
from .length import (
    AxiomReport,
    LengthEngine,
    additive_junction,
    check_axioms,
    common_beginning,
    engine_for,
    gromov_product,
    length,
    length_reduce,
    translation_length,
)
from .lexvec import LexVec, compare, height, infinitely_larger
from .tower import TowerPresentation, level_prefix, parse_tower, serialize_tower, validate_tower
from .weights import (
    WeightSystem,
    build_constraints,
    lex_shortest_length,
    solve_weights,
    weighted_length,
    weights_for,
)
from .words import NormalForm, Word, abelian_membership, britton_reduce, cyclic_reduce, equal, free_reduce

__all__ = [
    "AbelianBasis",
    "AxiomReport",
    "HeightProfile",
    "LengthEngine",
    "LexVec",
    "NormalForm",
    "SpaceBlueprint",
    "TowerPresentation",
    "WeightSystem",
    "Word",
    "abelian_membership",
    "additive_junction",
    "britton_reduce",
    "build_blueprint",
    "build_constraints",
    "check_axioms",
    "combine_equal_height",
    "common_beginning",
    "compare",
    "cyclic_reduce",
    "emit",
    "engine_for",
    "equal",
    "free_reduce",
    "fundamental_group",
    "gromov_product",
    "height",
    "infinitely_larger",
    "is_r_bounded",
    "length",
    "length_reduce",
    "level_prefix",
    "lex_shortest_length",
    "parse_tower",
    "reduce_basis",
    "serialize_tower",
    "solve_weights",
    "translation_length",
    "validate_tower",
    "verify_gluing",
    "weighted_length",
    "weights_for",
]
