"""Subgroup perfect codes and total perfect codes in Cayley sum graphs."""

from .codes import (
    PERFECT,
    TOTAL,
    CodeCertificate,
    certify,
    enumerate_admitting,
    is_perfect_code,
    is_total_perfect_code,
    pc_criterion,
    tpc_criterion,
)
from .corpus import ACCEPTANCE_CORPUS, parse_descriptor
from .galois import field_make
from .graphs import CayleySumGraph, build_cs_graph, normal_subset, normal_subset_from_elements
from .groups import GroupTable, make_agl1_q, make_cyclic, make_dihedral, make_direct_product

__version__ = "0.1.0"
