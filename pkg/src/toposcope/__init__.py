"""toposcope: a workbench for presheaf toposes on finite sites.

Finite categories are explicit composition tables; presheaves are finite
carriers with explicit actions.  On top of that the package computes sieves
and Grothendieck topologies (with a brute-force lattice oracle), envelopes
(least subtoposes containing an object, via stable orthogonality), the
pre-cohesive adjoint string over finite sets, and verifiers that replay the
structural facts relating all of these on the built-in catalog of sites.
"""

from .fincat import (
    FinCategory, validate_category, terminal_objects, chosen_terminal, points,
    CategoryError, NoTerminal,
)
from .presheaf import (
    Presheaf, NatTransf, Subobject, Pi0,
    validate_presheaf, yoneda, yoneda_map, terminal, initial, constant,
    product, product_projections, coproduct, nat_transformations, exponential,
    subobject_classifier, pi0, pi0_map, pullback_subobject, generated_subobject,
    all_subobjects, full_subobject, empty_subobject, identity_nat, find_iso,
    global_points, PresheafError, SiteMismatch,
)
from .sieves import (
    Sieve, Topology, SheafResult,
    sieves_on, pullback_sieve, generate_sieve, make_sieve, sieve_label,
    sieve_subobject, max_sieve, empty_sieve, validate_topology,
    enumerate_topologies, meet_topologies, join_topologies, double_negation,
    trivial_topology, degenerate_topology, is_sheaf, is_dense_subobject,
    element_sieve, TooLarge, TopologyError, SieveError,
)
from .envelope import (
    OrthogonalityVerdict, is_orthogonal, is_internally_orthogonal,
    is_stably_orthogonal, stable_orthogonality_bruteforce, exponential_map,
    envelope_topology, oracle_envelope, connectivity_covering_criterion,
    EnvelopeError, NotMonic, AxiomViolation, OracleMismatch,
)
from .cohesion import (
    CohesiveStructure, PrecohesionReport, LemmaPi0Report,
    cohesive_structure, check_precohesive, p_shriek, p_shriek_map,
    p_shriek_iso, p_upperstar, p_star_direct, p_star_map, p_star_iso,
    p_uppershriek, discrete_skeleton, check_lemma_pi0,
    NotPrecohesive, SkeletonNotMonic, EquivalenceBroken,
)
from .verify import (
    Report, report_document, render_text, verify_weak_aufhebung,
    verify_dense_implies_pstar_iso, check_minus_infinity,
    reproduce_counterexample, check_weak_generation, run_all,
)
from .catalog import (
    build_delta1, build_delta_trunc, build_two_point_cone, build_parallel_edges,
    catalog_sites, catalog_presheaves, catalog_subobjects, BudgetExceeded,
)
from .sitefile import SiteFile, SiteFileError, parse_site, load_site, dump_site, save_site

__version__ = "0.1.0"
