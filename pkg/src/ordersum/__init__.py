"""Sums of element orders of finite groups, with exact threshold checks.

The main entry points are re-exported here; see the submodules for details.
"""

__version__ = "0.1.0"

from .catalog import CatalogEntry, load_catalog, validate_catalog
from .conjectures import (CheckOutcome, Verdict, check_HLM, check_odd, check_solvability_threshold,
                          check_T, classify_equality, scan_HLM, verify_lemmas)
from .constructors import (alternating, cyclic, dihedral, direct_product, paper_group,
                           semidirect_product, symmetric)
from .factor import FactoredInteger, factorize
from .group import FiniteGroup
from .perm import Permutation, parse_cycles
from .psi import (Comparison, ExactRational, f_prime, h_prime, herzog_lower_bound,
                  max_element_order_witness, psi, psi_cyclic, threshold_compare)
from .subgroups import (SubgroupHandle, all_subgroups, core, cyclic_subgroups, is_isomorphic,
                        is_nilpotent, is_normal, is_solvable, is_supersolvable, maximal_subgroups,
                        quotient, sylow)

__all__ = [
    "CatalogEntry", "CheckOutcome", "Comparison", "ExactRational", "FactoredInteger", "FiniteGroup",
    "Permutation", "SubgroupHandle", "Verdict", "all_subgroups", "alternating", "check_HLM", "check_T",
    "check_odd", "check_solvability_threshold", "classify_equality", "core", "cyclic",
    "cyclic_subgroups", "dihedral", "direct_product", "f_prime", "factorize", "h_prime",
    "herzog_lower_bound", "is_isomorphic", "is_nilpotent", "is_normal", "is_solvable",
    "is_supersolvable", "load_catalog", "max_element_order_witness", "maximal_subgroups",
    "paper_group", "parse_cycles", "psi", "psi_cyclic", "quotient", "scan_HLM",
    "semidirect_product", "symmetric", "sylow", "threshold_compare", "validate_catalog",
    "verify_lemmas",
]
