"""Exact Pell and Pell-Lucas numbers.

The Pell sequence is P_0=0, P_1=1, P_{n+2} = 2*P_{n+1} + P_n; its companion
is Q_0=2, Q_1=2, Q_{n+2} = 2*Q_{n+1} + Q_n.  Two independent evaluation
paths are provided: plain iteration of the recurrences, and a binary
doubling ladder using

    P_{2m} = P_m * Q_m
    Q_{2m} = Q_m**2 - 2*(-1)**m
    P_{m+1} = P_m + Q_m // 2        (Q_m is always even)
    Q_{m+1} = Q_m + 4*P_m

which are exact integer consequences of the closed forms over the roots
1 +/- sqrt(2).  No floating point is used anywhere; the two paths serve as
mutual oracles in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class PellPair:
    """A Pell / Pell-Lucas value pair (P_n, Q_n) at a shared index.

    Invariants (checked by the test suite, not the constructor):
    q**2 - 8*p**2 == 4 for even n and == -4 for odd n, and p >= 2**(n/2)
    for n >= 2.
    """

    n: int
    p: int
    q: int


def pell_pair(n: int) -> PellPair:
    """Compute (P_n, Q_n) exactly with O(log n) big-integer multiplications.

    Walks the bits of n from the most significant end, doubling the current
    index and advancing by one where a bit is set.  Index 0 gives (0, 2).
    """
    if n < 0:
        raise ValueError("index must be >= 0")
    p, q = 0, 2
    m = 0
    for shift in range(n.bit_length() - 1, -1, -1):
        # m -> 2m; the sign in the Q rule depends on the parity of m
        p, q = p * q, q * q - (2 if m % 2 == 0 else -2)
        m *= 2
        if (n >> shift) & 1:
            p, q = p + q // 2, q + 4 * p
            m += 1
    return PellPair(n=n, p=p, q=q)


def pell(n: int) -> int:
    """P_n by the doubling ladder (convenience wrapper around pell_pair)."""
    return pell_pair(n).p


def pell_iterative(n: int) -> int:
    """P_n by straight iteration of the recurrence; oracle for pell_pair."""
    if n < 0:
        raise ValueError("index must be >= 0")
    a, b = 0, 1
    for _ in range(n):
        a, b = b, 2 * b + a
    return a


def pell_lucas_iterative(n: int) -> int:
    """Q_n by straight iteration of the companion recurrence."""
    if n < 0:
        raise ValueError("index must be >= 0")
    a, b = 2, 2
    for _ in range(n):
        a, b = b, 2 * b + a
    return a


def pell_sequence(n_max: int) -> list[int]:
    """[P_0, ..., P_{n_max}] in one linear pass."""
    if n_max < 0:
        raise ValueError("index must be >= 0")
    seq = [0, 1]
    while len(seq) <= n_max:
        seq.append(2 * seq[-1] + seq[-2])
    return seq[: n_max + 1]


def pell_lucas_sequence(n_max: int) -> list[int]:
    """[Q_0, ..., Q_{n_max}] in one linear pass."""
    if n_max < 0:
        raise ValueError("index must be >= 0")
    seq = [2, 2]
    while len(seq) <= n_max:
        seq.append(2 * seq[-1] + seq[-2])
    return seq[: n_max + 1]


def size_bound_holds(n: int) -> bool:
    """Whether P_n >= 2**(n/2), tested in the squared form P_n**2 >= 2**n.

    The squared form keeps the comparison in exact integer arithmetic.
    Defined for n >= 2 only (the bound fails at n = 1).
    """
    if n < 2:
        raise ValueError("size bound is stated for n >= 2")
    p = pell_pair(n).p
    return p * p >= 1 << n


def digits10(n: int) -> int:
    """Exact decimal digit count of n >= 0 without building the string.

    str() is quadratic for very large integers (and capped by default on
    recent CPython); this uses a bit-length estimate corrected by at most
    a couple of power-of-ten comparisons.
    """
    n = abs(n)
    if n == 0:
        return 1
    est = int(n.bit_length() * 30103 // 100000)  # ~ floor(log10(n))
    p10 = 10**est
    if n < p10:
        while n < p10:
            est -= 1
            p10 //= 10
    else:
        p10 *= 10
        while n >= p10:
            est += 1
            p10 *= 10
    return est + 1
