"""Executable Pell identities used by the verification harness.

Everything here is re-verified numerically on each call rather than
trusted: a wrong branch selection or index slip should surface as a failed
check, not as a silently wrong downstream verdict.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import is_probable_prime, nu2
from .sequences import pell_pair


def check_pq_relation(n: int) -> bool:
    """True iff Q_n**2 - 8*P_n**2 == 4*(-1)**n, in exact signed arithmetic."""
    pair = pell_pair(n)
    return pair.q**2 - 8 * pair.p**2 == (4 if n % 2 == 0 else -4)


@dataclass(frozen=True)
class PellMinusOneSplit:
    """The two-factor decomposition P_n - 1 = P_{p_index} * Q_{q_index}.

    For odd n, {p_index, q_index} = {(n-1)/2, (n+1)/2}; which half carries
    which role depends on n mod 4.
    """

    n: int
    p_index: int
    q_index: int
    p_part: int
    q_part: int


def split_pell_minus_one(n: int) -> PellMinusOneSplit:
    """Decompose P_n - 1 for odd n >= 3; the product is re-verified."""
    if n % 2 == 0:
        raise ValueError("the P_n - 1 split is defined for odd n only")
    if n < 3:
        raise ValueError("need n >= 3")
    if n % 4 == 1:
        p_index, q_index = (n - 1) // 2, (n + 1) // 2
    else:
        p_index, q_index = (n + 1) // 2, (n - 1) // 2
    p_part = pell_pair(p_index).p
    q_part = pell_pair(q_index).q
    if p_part * q_part != pell_pair(n).p - 1:
        raise AssertionError(f"split of P_{n} - 1 failed to multiply back")
    return PellMinusOneSplit(
        n=n, p_index=p_index, q_index=q_index, p_part=p_part, q_part=q_part
    )


def check_nu2_lemma(n: int) -> bool:
    """True iff nu2(Q_n) == 1 and nu2(P_n) == nu2(n), for n >= 1."""
    if n < 1:
        raise ValueError("need n >= 1")
    pair = pell_pair(n)
    return nu2(pair.q) == 1 and nu2(pair.p) == nu2(n)


def residue_mod4_of_factor(n: int, q: int) -> int:
    """Residue q mod 4 for a prime q dividing P_n with n odd.

    Every such residue is expected to be 1 (reduce the companion relation
    modulo q), but the value is returned rather than asserted so that a
    counterexample would surface as data.
    """
    if n % 2 == 0:
        raise ValueError("n must be odd")
    if not is_probable_prime(q):
        raise ValueError(f"{q} is not prime")
    if pell_pair(n).p % q != 0:
        raise ValueError(f"{q} does not divide P_{n}")
    return q % 4
