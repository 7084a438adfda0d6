"""Exact computation with noncommutative rational series.

Trace series of finite-dimensional modules over free algebras, their
linear realizations (weighted-automaton style), minimization and exact
equality, module reconstruction from a series, the idempotent-shift
module variant, and quasideterminant-based cross-checks. All arithmetic
is exact over the rationals.
"""

from .exactlinalg import (
    DimensionMismatch,
    Matrix,
    Rational,
    SingularMatrix,
    Subspace,
    algebra_closure,
    mat_inverse,
    nullspace,
    rref,
    trace_form_radical,
)
from .ncseries import (
    AlphabetMismatch,
    BadLetter,
    NotAugmentation,
    NotInvertible,
    OrderExceeded,
    TruncSeries,
    circ,
    epsilon,
    fox_derive,
    magnus,
    monomial,
    one_series,
    pairing,
    pmu_pi,
    pmu_z,
    series_add,
    series_from_obj,
    series_invert,
    series_mul,
    series_scale,
    series_to_obj,
    truncate,
    zero_series,
)
from .linrep import (
    LinRep,
    backward_span,
    coeff,
    expand,
    first_difference,
    forward_span,
    make_rep,
    minimize,
    poly_rep,
    rep_add,
    rep_equal,
    rep_fox,
    rep_from_obj,
    rep_inverse,
    rep_mul,
    rep_pi,
    rep_scalar,
    rep_to_obj,
    rep_z,
    zero_rep,
)
from .modchar import (
    FreeModule,
    NotSemisimple,
    chi_rep,
    chi_trace_oracle,
    conjugate,
    direct_sum,
    fliess_rep,
    is_absolutely_simple,
    is_semisimple,
    make_module,
    module_from_obj,
    module_to_obj,
    reconstruct,
    semisimple_iso_test,
)
from .pmu import (
    AlexanderPoly,
    EvalAtOneZero,
    InvalidRelations,
    PmuModule,
    Prop43Report,
    alexander_invariants,
    induced,
    is_primitive,
    make_pmu,
    phi_rep,
    phi_trace_oracle,
    pmu_from_obj,
    pmu_to_obj,
    prop43_report,
    validate,
)
from .quasidet import (
    NonProperEntries,
    SeriesMatrix,
    SingularConstantTerm,
    chi_via_qdet,
    qdet,
    smat_from_entries,
    smat_from_matrix,
    smat_identity,
    smat_inverse,
    walk_series,
)

__version__ = "0.1.0"
