"""Exact polynomial ideal computations and a verification harness for the Mayr-Meyer ideal J(1,d)."""
from .certificates import (
    Certificate,
    CertificateQuery,
    DegreeSearch,
    LinearSystem,
    Restriction,
    build_system,
    find_certificate,
    min_certificate_degree,
    monomial_basis,
    solve_exact,
)
from .exceptions import MMLabError, NotHomogeneousError, ParseError, RingMismatchError, UnsupportedClaimError
from .groebner import (
    DivisionResult,
    GroebnerBasis,
    buchberger,
    divide,
    is_groebner_basis,
    normal_form,
    reduce_basis,
    s_polynomial,
)
from .ideal import (
    Ideal,
    colon,
    colon_ideal,
    contains,
    dimension,
    eliminate,
    height,
    ideal_equal,
    intersect,
    membership_power,
    product,
    radical_member,
    sum_ideals,
)
from .mayr_meyer import (
    ComponentSpec,
    MayrMeyerInstance,
    build_components,
    build_J,
    build_minimal_intersection,
    build_radical,
    char_split,
)
from .parse import emit_report, parse_polynomial, parse_ring, parse_session, render
from .ring import (
    QQ,
    Block,
    FieldSpec,
    GrevLex,
    Lex,
    Monomial,
    Polynomial,
    RingSpec,
    compare_monomials,
    extend_ring,
    multidegree,
)
from .verify import VerificationReport, verify

__version__ = "0.1.0"
