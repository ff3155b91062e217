"""Concurrence of superpositions of bipartite pure states."""
from .bounds import (BoundsReport, Superposition, bounds_arbitrary_multi, bounds_arbitrary_pair,
                     bounds_one_sided, bounds_orthogonal, evaluate, exact_biorthogonal,
                     reference_bounds, superpose_direct, superpose_exact,
                     superpose_expansion)
from .concurrence import (ConcurrenceVector, GeneratorSet, concurrence, concurrence_inverter,
                          concurrence_purity, concurrence_vector, concurrence_vector_dot,
                          generator_set, pair_concurrence, pair_concurrence_closed,
                          universal_inverter, universal_inverter_sum)
from .linalg import (DensityOperator, PureState, SchmidtForm, inner_product, partial_trace_a,
                     partial_trace_b, schmidt_decompose)
from .orthogonality import OrthoClass, classify_pair, classify_set
from .verifier import EnsembleSpec, VerificationReport, random_class_set, random_pure_state, verify

__version__ = "0.1.0"
