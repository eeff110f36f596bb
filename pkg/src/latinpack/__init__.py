"""Latin squares whose rows, columns and their reversals pack permutation groups."""

from .constructions import (
    ConstructionError,
    PackingSet,
    boolean_matrices,
    composite,
    couple_selection,
    decompose_composite,
    double_occurrence_base,
    double_occurrence_set,
    extend_packing,
    min_lines_square,
    mols_packed,
    pack_even,
    pack_even_subgroup,
    pack_odd,
    pack_single,
    subgroup_4n,
)
from .perm_core import (
    PermGroup,
    apply_entrywise,
    compose,
    double_cosets,
    generate_group,
    inverse,
    left_coset_reps,
    lines,
)
from .ring import construct_quartet, find_quartet, make_ring, reflectable_enumeration, units
from .verify import (
    are_orthogonal,
    classify_symmetry,
    enumerate_latin_squares,
    is_latin,
    is_strongly_asymmetric,
    lines_form_group,
    verify_packing,
)

__version__ = "0.1.0"
