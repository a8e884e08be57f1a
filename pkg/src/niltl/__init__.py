"""Exact computations in the nil Temperley-Lieb algebra T(n) of type affine C."""

from .algebra import (
    TElement,
    coxeter_factorization,
    defining_relations,
    factor_c_form,
    mul,
    q_element,
    q_valuation,
    u_weight,
)
from .diagram import CoxeterData, build_diagram, cf_normal_form, commutation_class, parse_word
from .enumeration import EnumerationReport, enumerate_minuscule
from .errors import NilTLError
from .heaps import (
    Heap,
    Region,
    all_weights,
    construct_C,
    coxeter_word,
    forbidden_oracle,
    heap_from_word,
    is_convex_region,
    is_minuscule,
    rank_and_embed,
    weights_of,
)
from .laurent import LaurentPoly
from .modules import FiniteModule, build_module, endomorphism_dim, is_irreducible, trivial_module
from .representation import (
    IdealBoundary,
    StateVector,
    WeightMatrix,
    apply_element,
    apply_generator,
    interval_region,
    matrix_of,
    psi,
    psi_inv,
    raise_ideal,
)
from .verify import verify_suite

__version__ = "0.1.0"
