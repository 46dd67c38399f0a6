"""Kerov polynomials via Stanley's character formula and bicolored maps."""

from .closedform import (
    count_bounded_solutions,
    linear_coefficient,
    positive_kerov_from_forests,
    quadratic_coefficient,
    subdominant_expansion,
    top_term_coefficient,
    two_part_top_coefficient,
)
from .decompose import FormalMapSum, OrientedLoop, admissible_loops, d1, d_full, t_transform
from .kerov import (
    NotInRAlgebraError,
    RPolynomial,
    TruncationTooSmallError,
    express_in_R,
    free_cumulant_poly,
    generalized_kerov,
    kerov_polynomial,
    positive_kerov,
    sigma_from_sigma_prime,
    sigma_poly,
    sigma_prime_poly,
    verify_positivity,
)
from .maps import BicoloredMap, build_map, faces
from .nseries import PQPolynomial, evaluate, n_of_graph
from .oracle import YoungDiagram, diagram_from_pq, free_cumulants_numeric, mn_character, normalized_character
from .permutations import NonCrossingPartition, Permutation

__version__ = "0.1.0"
