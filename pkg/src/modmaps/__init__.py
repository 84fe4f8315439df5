"""Exact enumeration of finite-index modular-group subgroups.

Subgroups of index mu are represented as pairs (phi, psi) of permutations
of the cosets with phi an involution, psi of order dividing three, and the
pair acting transitively. The package provides validated models for such
pairs, closed-form counting of the torsion-free genus-zero families, an
exhaustive canonical-construction search (compiled kernel with a pure
Python fallback), conversions to coset graphs and trivalent maps, and a
command-line census/verification tool.
"""

from .counting_formulas import (
    ExperimentalFormula,
    NonIntegralResult,
    liskovets_unrooted_all,
    mullin_rooted_trivalent,
    mullin_vertex_form,
    n_classes,
    n_rooted,
    totient,
    tutte_rooted_all,
)
from .enumerator import (
    ConjClass,
    RootedClass,
    SearchFilter,
    backend_name,
    canonical_form,
    class_size,
    conjugacy_reduce,
    enumerate_classes,
    enumerate_rooted,
    min_canonical_key,
)
from .map_model import (
    HasTorsion,
    SchreierGraph,
    TrivalentMap,
    euler_genus,
    export_dot,
    face_degrees,
    from_schreier,
    to_map,
    to_schreier,
)
from .perm_core import (
    FixedPoints,
    Permutation,
    compose,
    conjugate,
    cycle_type,
    fixed_points,
    format_cycles,
    identity,
    inverse,
    is_transitive,
    orbit_partition,
    parse_cycles,
)
from .subgroup_model import (
    CosetPair,
    CuspSplit,
    DegreeMismatch,
    NonIntegralGenus,
    NotInvolution,
    NotOrderThree,
    NotTransitive,
    PairError,
    Signature,
    cusp_split,
    genus_from_counts,
    is_genus,
    is_torsion_free,
    mirror,
    signature,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "CensusRecord",
    "ConjClass",
    "CosetPair",
    "CuspSplit",
    "DegreeMismatch",
    "ExperimentalFormula",
    "FixedPoints",
    "GoldenTable",
    "HasTorsion",
    "NonIntegralGenus",
    "NonIntegralResult",
    "NotInvolution",
    "NotOrderThree",
    "NotTransitive",
    "PairError",
    "Permutation",
    "RootedClass",
    "SchreierGraph",
    "SearchFilter",
    "Signature",
    "TrivalentMap",
    "backend_name",
    "canonical_form",
    "class_size",
    "compose",
    "conjugate",
    "conjugacy_reduce",
    "cusp_split",
    "cycle_type",
    "enumerate_classes",
    "enumerate_rooted",
    "euler_genus",
    "export_dot",
    "face_degrees",
    "fixed_points",
    "format_cycles",
    "from_schreier",
    "genus_from_counts",
    "identity",
    "inverse",
    "is_genus",
    "is_torsion_free",
    "is_transitive",
    "liskovets_unrooted_all",
    "load_golden_table",
    "load_records",
    "min_canonical_key",
    "mirror",
    "mullin_rooted_trivalent",
    "mullin_vertex_form",
    "n_classes",
    "n_rooted",
    "orbit_partition",
    "parse_cycles",
    "signature",
    "to_map",
    "to_schreier",
    "totient",
    "tutte_rooted_all",
    "validate",
]


def __getattr__(name):  # lazy: census_cli pulls in click
    if name in {"CensusRecord", "GoldenTable", "load_golden_table",
                "load_records"}:
        from . import census_cli

        return getattr(census_cli, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
