"""Arc-regular coset maps on almost Sylow-cyclic groups: group tables, the five
family constructions, brute-force pair/triple classification, the four map
constructions, and a verification harness."""

from .errors import (ArcmapsError, InvalidAction, InvalidInput, InvalidParameter, InvalidSubgroup,
                     NotCovered, RelationFailure, ResourceLimit)
from .groups import GroupTable, Subgroup, direct_product, make_cyclic, make_dihedral, semidirect_product
from .analysis import automorphism_group, tau_order
from .families import FamilySpec, build_family, canonical_representatives, predicted_class_count
from .generators import EnumOptions, classify_orbits, enumerate_reversing_triples, enumerate_rotary_pairs
from .maps import bi_rev_map, bi_rota_map, map_census, rev_map, rota_map, underlying_graph
from .verify import CensusReport, export_report, sweep, verify_family

__version__ = "0.1.0"
