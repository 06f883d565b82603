"""jetdiff: exact construction and certification of symmetric jet differentials
on complete-intersection surfaces z^d = R(x,y), t^e = S(x,y) in projective 4-space.

All arithmetic is exact (arbitrary-precision rationals); every certificate
issued by this package is a bit-exact polynomial identity.
"""

from .polyring import (
    NEG_INF,
    ExactPoly,
    ParseError,
    VarSet,
    gcd_univariate,
    monomial_quotient,
    poly_add,
    poly_diff,
    poly_mul,
    poly_neg,
    poly_parse,
    poly_pow,
    poly_substitute,
    resultant,
    resultant_y,
    squarefree_univariate,
)
from .jetbuilder import (
    JET_VARS,
    XY,
    CoefficientField,
    JetSpec,
    LambdaExpansion,
    SurfacePair,
    build_jet,
    expand_lambda,
    index_tuples,
    lambda_degree_check,
    monomials_upto,
    unit_field,
)
from .divisibility import (
    AssemblyError,
    ConstraintSystem,
    SectionCertificate,
    assemble_divisibility_system,
    build_section,
    kernel_basis,
    solution_dimension,
    unknown_labels,
    vector_to_field,
)
from .genericity import (
    CheckResult,
    GenericityReport,
    IntersectionReport,
    axis_ox_disposition_check,
    curve_smooth_check,
    full_genericity_audit,
    infinity_disposition_check,
    line_y0_disposition_check,
    no_triple_check,
    pair_transversality_check,
    shear,
)
from .injectivity import (
    GenericityGateError,
    InjectivityResult,
    LinearMapMatrix,
    analyze_injectivity,
    injectivity_matrix,
    triangular_reduction_check,
    vanishing_lemma_check,
    verify_injectivity_theorem,
    verify_rx_sx_proposition,
)
from .surfacecharts import (
    InfinityExponentReport,
    StructuredJet,
    TransferResult,
    full_chart_transfer,
    homogenize_surface_and_check,
    restrict_to_surface,
    verify_derivative_transfer,
    verify_infinity_exponents,
)
from .counting import (
    ChiCrossCheck,
    CountReport,
    DimensionBound,
    chi_cross_check_2_3,
    choose_m,
    constraint_bound,
    count_report,
    cubic_value,
    dimension_lower_bound,
    dof,
    e_upper_bound,
    euler_characteristic,
    minimal_admissible_d,
)

__version__ = "0.1.0"
