"""Exact verification, gauge invariants and census identification for
multiplicity-free fusion categories."""

from .cyclo import Cyclo, ParseError, format_cyclo, format_numeric, from_root, parse_cyclo
from .ring import FusionRing, RingError, automorphisms, load_ring, validate_ring
from .skeleton import (
    SkeletalData,
    check_all,
    check_hexagon,
    check_pentagon,
    check_pivotal,
    check_vacuum,
    classify_properties,
    load_data,
    quantum_dims,
    s_matrix,
)
from .gauge import (
    GaugeTransform,
    apply_gauge,
    apply_permutation,
    gauge_weight,
    is_de_jure_invariant,
    parse_monomial,
    random_gauge,
)
from .invariant import NON_BRAIDED, bundled_census, evaluate_item, load_census, match_census
from .catalog import CatalogSpec, build, catalog_data, solve_braidings, solve_pivotals

__version__ = "0.1.0"

__all__ = [
    "Cyclo",
    "ParseError",
    "format_cyclo",
    "format_numeric",
    "from_root",
    "parse_cyclo",
    "FusionRing",
    "RingError",
    "automorphisms",
    "load_ring",
    "validate_ring",
    "SkeletalData",
    "check_all",
    "check_hexagon",
    "check_pentagon",
    "check_pivotal",
    "check_vacuum",
    "classify_properties",
    "load_data",
    "quantum_dims",
    "s_matrix",
    "GaugeTransform",
    "apply_gauge",
    "apply_permutation",
    "gauge_weight",
    "is_de_jure_invariant",
    "parse_monomial",
    "random_gauge",
    "NON_BRAIDED",
    "bundled_census",
    "evaluate_item",
    "load_census",
    "match_census",
    "CatalogSpec",
    "build",
    "catalog_data",
    "solve_braidings",
    "solve_pivotals",
]
