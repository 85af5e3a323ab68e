"""Machine verification that no Pell number has the Lehmer property.

The package is organized around the steps the result delegates to
computation: exact sequence values (`sequences`), generic integer
machinery (`arith`), executable identities (`identities`), the staged
Lehmer decision procedure (`lehmer`), certified transcendental
comparisons (`intervals`), and the orchestrating harness (`verifier`).
"""

from .arith import (
    FactorPolicy,
    Factorization,
    Squarefree,
    euler_phi,
    factor,
    is_probable_prime,
    is_squarefree,
    nu2,
    nu_p,
    omega,
)
from .identities import (
    PellMinusOneSplit,
    check_nu2_lemma,
    check_pq_relation,
    residue_mod4_of_factor,
    split_pell_minus_one,
)
from .intervals import CertificationError, Interval, certify
from .lehmer import (
    LehmerReason,
    LehmerStatus,
    LehmerVerdict,
    lehmer_check,
    witness_reject,
)
from .sequences import (
    PellPair,
    pell,
    pell_iterative,
    pell_lucas_iterative,
    pell_lucas_sequence,
    pell_pair,
    pell_sequence,
    size_bound_holds,
)
from .verifier import (
    LEHMER_OMEGA_MIN,
    BoundReport,
    FactorCache,
    IndexReport,
    VerificationReport,
    bound_chain,
    cache_load,
    cache_store,
    e8_threshold_check,
    final_threshold,
    run_identity_suite,
    verify_index,
    verify_range,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "CertificationError",
    "FactorCache",
    "FactorPolicy",
    "Factorization",
    "IndexReport",
    "Interval",
    "LEHMER_OMEGA_MIN",
    "LehmerReason",
    "LehmerStatus",
    "LehmerVerdict",
    "PellMinusOneSplit",
    "PellPair",
    "Squarefree",
    "VerificationReport",
    "bound_chain",
    "cache_load",
    "cache_store",
    "certify",
    "check_nu2_lemma",
    "check_pq_relation",
    "e8_threshold_check",
    "euler_phi",
    "factor",
    "final_threshold",
    "is_probable_prime",
    "is_squarefree",
    "lehmer_check",
    "nu2",
    "nu_p",
    "omega",
    "pell",
    "pell_iterative",
    "pell_lucas_iterative",
    "pell_lucas_sequence",
    "pell_pair",
    "pell_sequence",
    "residue_mod4_of_factor",
    "run_identity_suite",
    "size_bound_holds",
    "split_pell_minus_one",
    "verify_index",
    "verify_range",
    "witness_reject",
]
