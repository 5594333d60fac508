"""Finite groups, non-commuting graphs, and centralizer-based classification.

The package builds small finite groups exactly (matrix groups over GF(q),
permutation groups, products and extensions), constructs their non-commuting
graphs, and runs the centralizer / clique / partition computations needed to
decide which group a given graph belongs to at desk scale.
"""

__version__ = "0.1.0"

from .classify import (
    ACResult,
    ClassificationReport,
    FrobeniusStructure,
    RivalScanReport,
    TransferResult,
    VerificationReport,
    ac_nonsolvable_case,
    ac_solvable_case,
    ac_transfer_check,
    frobenius_structure,
    is_ac_group,
    prime_power_incompatibility,
    rival_scan,
    verify_theorem_gl,
    verify_theorem_sl,
)
from .constructions import (
    GroupDescriptor,
    alternating,
    build,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    order6_catalog,
    order24_catalog,
    parse_descriptor,
    semidirect_product,
    symmetric,
)
from .ffield import FieldElem, FieldSpec, make_field
from .groups import (
    Group,
    Subgroup,
    internal_direct_product,
    is_isomorphic,
    subgroup_lattice,
)
from .matgroups import PartitionReport, gl2, maximal_abelian_partition, pgl2, psl2, sl2
from .ncgraph import (
    CentralizerProfile,
    CliqueBudgetError,
    Fingerprint,
    NCGraph,
    build_graph,
    centralizer_profile,
    clique_number,
    fingerprint,
    graphs_isomorphic,
)

__all__ = [
    "ACResult",
    "CentralizerProfile",
    "ClassificationReport",
    "CliqueBudgetError",
    "FieldElem",
    "FieldSpec",
    "Fingerprint",
    "FrobeniusStructure",
    "Group",
    "GroupDescriptor",
    "NCGraph",
    "PartitionReport",
    "RivalScanReport",
    "Subgroup",
    "TransferResult",
    "VerificationReport",
    "__version__",
    "ac_nonsolvable_case",
    "ac_solvable_case",
    "ac_transfer_check",
    "alternating",
    "build",
    "build_graph",
    "centralizer_profile",
    "clique_number",
    "cyclic",
    "dicyclic",
    "dihedral",
    "direct_product",
    "fingerprint",
    "frobenius_structure",
    "gl2",
    "graphs_isomorphic",
    "internal_direct_product",
    "is_ac_group",
    "is_isomorphic",
    "make_field",
    "maximal_abelian_partition",
    "order6_catalog",
    "order24_catalog",
    "parse_descriptor",
    "pgl2",
    "prime_power_incompatibility",
    "psl2",
    "rival_scan",
    "semidirect_product",
    "sl2",
    "subgroup_lattice",
    "symmetric",
    "verify_theorem_gl",
    "verify_theorem_sl",
]
