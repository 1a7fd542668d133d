"""Exact computations with the Weyl algebras A_n, their filtered modules,
growth data, return functions and the Poisson algebra P_2n."""
from .growth import GrowthFit, fit_quasi_polynomial, growth_profile
from .inequalities import (
    Root,
    Verdict,
    commutative_subalgebra_bound,
    filter_dimension_consistency,
    first_filter_bound,
    first_filter_report,
    holonomic_classify,
    inequality_report,
    length_bounds,
    second_filter_bound,
    weyl_constants,
)
from .linalg import ResourceLimitError
from .modules import (
    ConcreteModule,
    CyclicQuotient,
    DimensionSequence,
    algebra_dimension_sequence,
    cyclic_quotient_module,
    direct_sum,
    load_module,
    module_dimension_sequence,
    polynomial_module,
    twisted_polynomial_module,
)
from .poisson import (
    hamiltonian_weyl_image,
    independence_check,
    isotropic_bound_report,
    isotropic_check,
    poisson_bracket,
)
from .returns import AdChainCertificate, ad_chain_witness, return_function_profile
from .weyl import (
    DimensionMismatch,
    ParseError,
    Polynomial,
    WeylElement,
    ad_generator,
    filtration_basis,
    filtration_degree,
    filtration_dimension,
    mul,
    parse,
    render,
)

__version__ = "0.1.0"
