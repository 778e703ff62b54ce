"""Exact-arithmetic bounds on the index of unipotent local monodromy.

Computes orders of GL_d over F_ell and Z/4Z, their certified gcd over
primes distinct from the residue characteristic, the derived bound
attached to the Betti/Chern invariants of a polarized variety, exact
Chern-class calculus for concrete families, and the finite-order plus
nilpotent decomposition of quasi-unipotent rational matrices.
"""

__version__ = "0.1.0"

from .numtheory import (
    FactoredInt,
    PrimeIter,
    euler_phi,
    factorize,
    gcd_factored,
    is_prime,
    phi_inverse_set,
    valuation,
)
from .group_orders import c_ell_d, order_gl_fq, order_gl_z4
from .compat_bounds import (
    RefinedBound,
    ScanCertificate,
    c_d,
    p_part_c_d,
    refined_bound,
)
from .variety_bounds import (
    BoundReport,
    DVector,
    VarietyInvariants,
    bound,
    d_vector,
    descend,
    euler_char_section,
)
from .chern_invariants import (
    FamilySpec,
    TruncSeries,
    betti_vector,
    c_invariant,
    chern_total_dual_cotangent,
    complete_intersection,
    euler_characteristic,
    hypersurface,
    invariants_of,
    projective_space,
    section_of,
)
from .wd_matrix import (
    RationalMatrix,
    WDPair,
    is_quasi_unipotent,
    is_unipotent,
    jordan_chevalley,
    nilpotent_exp,
    nilpotent_log,
    semisimple_order,
    trace_criterion,
    wd_pair,
)
