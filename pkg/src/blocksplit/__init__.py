"""Exact decomposability checks for matrices and quiver representations
over the local ring at the origin, with checkable certificates."""

__version__ = "0.1.0"

from .ring import (
    GREVLEX,
    LEX,
    InvariantError,
    NonDivisibleError,
    ParseError,
    Poly,
    RingError,
    SeriesSqrtError,
    TableMismatchError,
    TermOrder,
    VarTable,
    divide_exact,
    format_poly,
    local_unit_test,
    parse_poly,
    sqrt_exact,
    sqrt_series,
    truncate,
    y_profile,
)
from .groebner import (
    Ideal,
    MembershipWitness,
    coprime_local,
    colon,
    contains_local_unit,
    groebner_basis,
    ideal_product,
    ideal_sum,
    intersect,
    member_global,
    member_local,
    normal_form,
    subset_local,
)
from .matrix import KernelBasis, PolyMatrix, det, fitting_ideal, kernel
from .oracle import (
    InstanceProfile,
    JetSpace,
    jet_member,
    jet_member_witness,
    random_instance,
    random_unimodular,
)
from .decompose import (
    DECOMPOSABLE,
    INCONCLUSIVE,
    NOT_DECOMPOSABLE,
    HypothesisCheck,
    Identity,
    Inclusion,
    Verdict,
    check_rect_lr,
    check_square_lr,
    quad_split_y,
)
from .quiver import (
    Arrow,
    KroneckerForm,
    QuiverRep,
    Vertex,
    build_kronecker,
    check_conj_2x2,
    check_quiver,
    complete_reduce,
    conj_pencil,
)

__all__ = [
    "__version__",
    "GREVLEX",
    "LEX",
    "InvariantError",
    "NonDivisibleError",
    "ParseError",
    "Poly",
    "RingError",
    "SeriesSqrtError",
    "TableMismatchError",
    "TermOrder",
    "VarTable",
    "divide_exact",
    "format_poly",
    "local_unit_test",
    "parse_poly",
    "sqrt_exact",
    "sqrt_series",
    "truncate",
    "y_profile",
    "Ideal",
    "MembershipWitness",
    "coprime_local",
    "colon",
    "contains_local_unit",
    "groebner_basis",
    "ideal_product",
    "ideal_sum",
    "intersect",
    "member_global",
    "member_local",
    "normal_form",
    "subset_local",
    "KernelBasis",
    "PolyMatrix",
    "det",
    "fitting_ideal",
    "kernel",
    "InstanceProfile",
    "JetSpace",
    "jet_member",
    "jet_member_witness",
    "random_instance",
    "random_unimodular",
    "DECOMPOSABLE",
    "INCONCLUSIVE",
    "NOT_DECOMPOSABLE",
    "HypothesisCheck",
    "Identity",
    "Inclusion",
    "Verdict",
    "check_rect_lr",
    "check_square_lr",
    "quad_split_y",
    "Arrow",
    "KroneckerForm",
    "QuiverRep",
    "Vertex",
    "build_kronecker",
    "check_conj_2x2",
    "check_quiver",
    "complete_reduce",
    "conj_pencil",
]
