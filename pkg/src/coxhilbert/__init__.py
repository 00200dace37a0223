"""Multigraded Hilbert functions on products of projective spaces and
hypercube persistence certificates for constant Hilbert polynomials."""

from .budget import Budget, default_budget
from .certificate import (
    CertificateVerdict,
    GasharovResult,
    Growth,
    ModuleSlice,
    Reason,
    Status,
    certify_constant,
    gasharov_check,
    hypercube_vertices,
    module_slice,
    replay_induction,
)
from .errors import (
    BudgetExceeded,
    InterpolationError,
    NotHilbertPolynomial,
    ParseError,
    StabilizationError,
)
from .grading import (
    Monomial,
    RingElement,
    RingSpec,
    enumerate_monomials,
    format_monomial,
    graded_piece_dimension,
    parse_monomial,
)
from .ideal import (
    HilbertValue,
    MultigradedIdeal,
    generation_degree_bound,
    hilbert_function,
    hilbert_value,
    ideal_from_json,
    ideal_to_json,
    is_member,
)
from .macaulay import (
    GotzmannRep,
    MacaulayRep,
    gotzmann_number,
    gotzmann_representation,
    macaulay_growth,
    macaulay_rep,
    min_certificate_point_2d,
)
from .oracle import HilbertGrid, PersistenceReport, compute_grid, verify_persistence
from .polynomial import NumericalPolynomial, hilbert_polynomial, interpolate_on_grid

__version__ = "0.1.0"
