"""Exact invariant polynomials of finite unitary groups and the CR maps they define.

The invariant polynomial of a finite group G in U(n) is

    Phi_G(z, wb) = 1 - prod_{g in G} (1 - <g z, w>),

which is G-invariant, equals 1 on the unit sphere, and whose coefficient
matrix has inertia (N+, N-).  Writing Phi_G = ||F||^2 - ||G||^2 gives a
polynomial map from the sphere to the hyperquadric Q(N+, N-).

Everything is computed over cyclotomic fields; floating point enters only in
certified interval checks of signs.
"""

from .cyclotomic import CycNum, cyc_arith, cyc_embed, cyc_root_of_unity, root_of_unity
from .errors import (
    BadParameters,
    DimensionMismatch,
    DomainViolation,
    EnumerationInvalid,
    InvariantCRError,
    NonIntegerCoefficient,
    NonRationalCoefficient,
    NotDiagonalSupport,
    NotHermitian,
    NotUnitary,
    OddPowerPresent,
    OrderExceeded,
    PrecisionExhausted,
    StructureViolation,
    VerificationFailed,
)
from .fpq import (
    fp2_recurrence,
    fp_pm1_structure,
    fpq_compute,
    golden_ratio_scalar,
    prime_test,
    proposition41_check,
)
from .groups import (
    UnitaryGroup,
    UnitaryMatrix,
    all_small_groups,
    close_group,
    make_cyclic,
    make_dihedral,
    make_example_3_3,
    make_gamma_pq,
    make_metacyclic,
    make_scalar_cyclic,
    swap_matrix,
)
from .hermpoly import (
    HermPoly,
    HolPoly,
    MomentPoly,
    hp_arith,
    hp_diagonal,
    hp_eval,
    hp_group_substitute,
    hp_reduce_quadric,
    hp_reduce_sphere,
    hp_to_moment,
)
from .invariant import (
    example_3_3_formula,
    noether_basis,
    phi_diagonal_moment,
    phi_dihedral,
    phi_gamma,
    phi_metacyclic,
    reynolds_average,
    verify_invariant,
)
from .quadmap import SplitPoly, build_gp, build_W, verify_quadmap
from .signature import (
    CoeffMatrix,
    Component,
    Inertia,
    QuadMap,
    coeff_matrix,
    decompose,
    inertia,
    signature_ratio,
)

__version__ = "0.1.0"
