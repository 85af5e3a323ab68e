"""Integer machinery: primality, budgeted factorization, totient, valuations.

Factorization is policy-driven and budget-aware.  Budgets are given in
milliseconds but are converted internally to deterministic work units
(UNITS_PER_MS, calibrated once for a nominal desktop), so the outcome of a
factorization is a pure function of (N, policy) -- wall-clock jitter can
never flip a result, which keeps whole verification reports byte-identical
across runs with the same seed.

The splitting pipeline for a stubborn composite is, in order of cost:
perfect-power detection, Pollard p-1 stage 1 (runs at C speed through
pow()), Brent-cycle rho, and a p-1 stage 2 prime walk.  Elliptic curves and
sieve methods are deliberately out of scope.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterator, Optional

#: Work units charged per nominal millisecond of budget.  One unit is
#: roughly one rho iteration on a desktop core; the constant only needs to
#: be fixed, not accurate, for results to be reproducible.
UNITS_PER_MS = 3000

# Deterministic Miller-Rabin witness set: correct for all N below this
# bound (first 13 primes as bases).
_MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_RANDOM_ROUNDS = 64

_SMALL_PRIME_SCREEN = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
    67, 71, 73, 79, 83, 89, 97,
)


class BudgetExhausted(Exception):
    """Internal signal: the work meter ran dry mid-factorization."""


class WorkMeter:
    """Deterministic budget accounting in work units."""

    def __init__(self, total_units: int):
        self.total = total_units
        self.used = 0

    def charge(self, units: int) -> None:
        self.used += units
        if self.used > self.total:
            raise BudgetExhausted


@dataclass(frozen=True)
class FactorPolicy:
    """Budgets and knobs for the factorization pipeline.

    trial_bound   largest prime used for trial division
    rho_budget_ms per-attempt budget for one Brent-rho run (milliseconds)
    max_total_ms  overall budget for one factor() call (milliseconds)
    pm1_b1        Pollard p-1 stage-1 smoothness bound (0 disables p-1)
    pm1_b2        Pollard p-1 stage-2 bound (0 disables stage 2)
    seed          root of all pseudo-random parameter choices
    """

    trial_bound: int = 1_000_000
    rho_budget_ms: int = 4_000
    max_total_ms: int = 120_000
    pm1_b1: int = 1_000_000
    pm1_b2: int = 2_000_000_000
    seed: int = 1

    def __post_init__(self):
        if self.trial_bound < 2:
            raise ValueError("trial_bound must be >= 2")
        if self.rho_budget_ms <= 0 or self.max_total_ms <= 0:
            raise ValueError("budgets must be positive")
        if self.pm1_b1 < 0 or self.pm1_b2 < 0:
            raise ValueError("p-1 bounds must be >= 0")


#: Deliberately starved policy, handy for exercising `undecided` outcomes.
TINY_POLICY = FactorPolicy(
    trial_bound=100, rho_budget_ms=1, max_total_ms=10, pm1_b1=0, pm1_b2=0
)


@dataclass(frozen=True)
class Factorization:
    """A (possibly partial) factorization: target = prod(p**e) * cofactor.

    Primes are strictly increasing, exponents >= 1, and cofactor is 1
    exactly when the factorization is complete.  The product identity is
    re-checked on construction.
    """

    target: int
    factors: tuple[tuple[int, int], ...]
    cofactor: int = 1

    def __post_init__(self):
        if self.target < 1:
            raise ValueError("target must be >= 1")
        if self.cofactor < 1:
            raise ValueError("cofactor must be >= 1")
        prod = self.cofactor
        last = 1
        for p, e in self.factors:
            if p <= last:
                raise ValueError("primes must be strictly increasing")
            if e < 1:
                raise ValueError("exponents must be >= 1")
            last = p
            prod *= p**e
        if prod != self.target:
            raise ValueError(
                f"factorization does not multiply back to {self.target}"
            )

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


class Squarefree(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


# ---------------------------------------------------------------------------
# primality


def _miller_rabin_round(n: int, a: int, d: int, s: int) -> bool:
    """True if n passes one Miller-Rabin round for base a."""
    a %= n
    if a == 0:
        return True
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _hashed_bases(n: int, count: int) -> Iterator[int]:
    """Deterministic, platform-stable pseudo-random bases derived from n."""
    span = n - 3
    for i in range(count):
        h = hashlib.sha256(f"pellcheck-mr:{n}:{i}".encode()).digest()
        yield 2 + int.from_bytes(h, "big") % span


def is_probable_prime(n: int) -> bool:
    """Primality test; never reports a prime as composite.

    Deterministic (fixed witness set) for n below ~3.3e24; beyond that,
    64 Miller-Rabin rounds with bases derived from a hash of n, so the
    answer is reproducible and the error probability is below 4**-64.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIME_SCREEN:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases: Iterator[int] | tuple[int, ...]
    if n < _MR_DETERMINISTIC_BOUND:
        bases = _MR_BASES
    else:
        bases = _hashed_bases(n, _MR_RANDOM_ROUNDS)
    return all(_miller_rabin_round(n, a, d, s) for a in bases)


# ---------------------------------------------------------------------------
# prime sieves

_sieve_cache: dict[int, list[int]] = {}


def small_primes(bound: int) -> list[int]:
    """All primes <= bound, cached per bound."""
    cached = _sieve_cache.get(bound)
    if cached is not None:
        return cached
    if bound < 2:
        primes: list[int] = []
    else:
        bs = bytearray(b"\x01") * (bound + 1)
        bs[0:2] = b"\x00\x00"
        for p in range(2, math.isqrt(bound) + 1):
            if bs[p]:
                start = p * p
                bs[start::p] = b"\x00" * ((bound - start) // p + 1)
        primes = [i for i in range(2, bound + 1) if bs[i]]
    _sieve_cache[bound] = primes
    return primes


def _primes_in_segment(lo: int, hi: int, base: list[int]) -> Iterator[int]:
    """Odd primes q with lo < q <= hi; base must hold all primes <= sqrt(hi)."""
    start = lo + 1
    if start % 2 == 0:
        start += 1
    if start > hi:
        return
    count = (hi - start) // 2 + 1  # candidates start, start+2, ...
    seg = bytearray(b"\x01") * count
    for p in base:
        if p == 2:
            continue
        if p * p > hi:
            break
        first = ((start + p - 1) // p) * p
        if first < p * p:
            first = p * p
        if first % 2 == 0:
            first += p
        idx = (first - start) // 2
        if idx < count:
            seg[idx::p] = b"\x00" * len(range(idx, count, p))
    for i in range(count):
        if seg[i]:
            yield start + 2 * i


# ---------------------------------------------------------------------------
# splitting methods


def _iroot(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0."""
    if n < 2 or k == 1:
        return n
    if k >= n.bit_length():
        return 1
    x = 1 << (n.bit_length() // k + 1)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _perfect_power_split(n: int) -> Optional[int]:
    """Return r with r**k == n for some prime k, if n is a perfect power."""
    for k in small_primes(64):
        if k > n.bit_length():
            break
        r = _iroot(n, k)
        if r**k == n:
            return r
    return None


def _rho_rng(seed: int, n: int, attempt: int) -> random.Random:
    h = hashlib.sha256(f"pellcheck-rho:{seed}:{n}:{attempt}".encode()).digest()
    return random.Random(int.from_bytes(h, "big"))


def _brent_rho(n: int, max_iters: int, rng: random.Random,
               meter: WorkMeter) -> Optional[int]:
    """One Brent-cycle rho attempt; returns a nontrivial divisor or None."""
    y = rng.randrange(1, n)
    c = rng.randrange(1, n)
    m = 128
    g = r = q = 1
    iters = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        iters += r
        meter.charge(r)
        if iters > max_iters:
            return None
        k = 0
        while k < r and g == 1:
            ys = y
            steps = min(m, r - k)
            for _ in range(steps):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
            iters += steps
            meter.charge(steps)
            if iters > max_iters:
                return None
        r *= 2
    if g == n:
        # the batched gcd overshot; replay the last block one step at a time
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
    return g if g != n else None


_stage1_exponent_cache: dict[int, int] = {}


def _stage1_exponent(b1: int) -> int:
    """Product of all maximal prime powers <= b1 (the stage-1 exponent)."""
    cached = _stage1_exponent_cache.get(b1)
    if cached is not None:
        return cached
    chunks = []
    for p in small_primes(b1):
        pk = p
        while pk * p <= b1:
            pk *= p
        chunks.append(pk)
    while len(chunks) > 1:  # balanced product tree
        nxt = [a * b for a, b in zip(chunks[::2], chunks[1::2])]
        if len(chunks) % 2:
            nxt.append(chunks[-1])
        chunks = nxt
    result = chunks[0] if chunks else 1
    _stage1_exponent_cache[b1] = result
    return result


def _pm1_stage1(n: int, b1: int,
                meter: WorkMeter) -> tuple[Optional[int], int]:
    """Pollard p-1 stage 1.  Returns (divisor or None, residue for stage 2)."""
    exponent = _stage1_exponent(b1)
    for base in (2, 3):
        g = math.gcd(base, n)
        if 1 < g < n:
            return g, 0
        meter.charge(exponent.bit_length() // 2 + 1)
        h = pow(base, exponent, n)
        g = math.gcd(h - 1, n)
        if g == 1:
            return None, h
        if g < n:
            return g, 0
        # g == n: p-1 is b1-smooth for every prime of n; try the next base
    return None, 0


_STAGE2_SEGMENT = 30_000_000


def _pm1_stage2(n: int, h: int, b1: int, b2: int,
                meter: WorkMeter) -> Optional[int]:
    """Pollard p-1 stage 2: walk the primes in (b1, b2] via gap powers."""
    base = small_primes(math.isqrt(b2) + 1)
    h2 = h * h % n
    gap_powers = {2: h2}
    max_gap = 2

    def advance(cur: int, prev: int, q: int) -> int:
        nonlocal max_gap
        if prev == 0:
            return pow(h, q, n)
        gap = q - prev
        while max_gap < gap:
            max_gap += 2
            gap_powers[max_gap] = gap_powers[max_gap - 2] * h2 % n
        return cur * gap_powers[gap] % n

    lo, prev_prime, cur = b1, 0, 0
    while lo < b2:
        hi = min(lo + _STAGE2_SEGMENT, b2)
        seg_state = (prev_prime, cur)
        acc = 1
        seg_count = 0
        for q in _primes_in_segment(lo, hi, base):
            cur = advance(cur, prev_prime, q)
            prev_prime = q
            acc = acc * (cur - 1) % n
            seg_count += 1
        meter.charge(3 * seg_count + 1000)
        g = math.gcd(acc, n)
        if 1 < g < n:
            return g
        if g == n:
            # several hits inside one segment; replay it prime by prime
            prev_prime, cur = seg_state
            for q in _primes_in_segment(lo, hi, base):
                cur = advance(cur, prev_prime, q)
                prev_prime = q
                g = math.gcd(cur - 1, n)
                if 1 < g < n:
                    return g
            return None
        lo = hi
    return None


def _find_divisor(n: int, policy: FactorPolicy,
                  meter: WorkMeter) -> Optional[int]:
    """Find one nontrivial divisor of the composite n, or None."""
    r = _perfect_power_split(n)
    if r is not None:
        return r
    stage2_h = 0
    if policy.pm1_b1 >= 2:
        g, stage2_h = _pm1_stage1(n, policy.pm1_b1, meter)
        if g is not None:
            return g
    rho_iters = policy.rho_budget_ms * UNITS_PER_MS
    for attempt in range(3):
        g = _brent_rho(n, rho_iters, _rho_rng(policy.seed, n, attempt), meter)
        if g is not None:
            return g
    if stage2_h and policy.pm1_b2 > policy.pm1_b1:
        return _pm1_stage2(n, stage2_h, policy.pm1_b1, policy.pm1_b2, meter)
    return None


# ---------------------------------------------------------------------------
# factor driver

OnPrime = Callable[[int, int], bool]


def factor(n: int, policy: FactorPolicy = FactorPolicy(), *,
           seeds: tuple[int, ...] = (),
           on_prime: Optional[OnPrime] = None,
           meter: Optional[WorkMeter] = None) -> Factorization:
    """Factor n under the policy's budgets.

    Trial division by primes up to policy.trial_bound runs first, then the
    splitting pipeline attacks what remains.  `seeds` are primes already
    known to divide n (re-verified by division; a bad seed raises).
    `on_prime` is invoked as each prime factor is confirmed, with the
    prime and its full exponent in n; returning True stops the
    factorization early, leaving whatever remains in the cofactor.
    A caller-supplied `meter` lets the work spent be read back afterwards.

    Budget exhaustion is never an error: the result simply carries a
    composite cofactor and complete == False.
    """
    if n < 1:
        raise ValueError("can only factor n >= 1")
    if meter is None:
        meter = WorkMeter(policy.max_total_ms * UNITS_PER_MS)
    found: dict[int, int] = {}
    # `remaining` is always the product of the not-yet-recorded parts of n,
    # so it is exactly the cofactor the moment we stop.
    remaining = n
    stopped = False

    def record(p: int) -> bool:
        """Divide p out of `remaining` fully; True means stop early."""
        nonlocal remaining
        e = 0
        while remaining % p == 0:
            remaining //= p
            e += 1
        if e == 0:
            return False  # already fully accounted via an earlier split
        found[p] = found.get(p, 0) + e
        return on_prime is not None and on_prime(p, found[p])

    for p in sorted(set(seeds)):
        if n % p != 0:
            raise ValueError(f"seed {p} does not divide {n}")
        if not is_probable_prime(p):
            raise ValueError(f"seed {p} is not prime")
        if record(p):
            stopped = True
            break

    budget_dead = False
    if not stopped and remaining > 1:
        bound = policy.trial_bound
        try:
            meter.charge(len(small_primes(bound)) // 8 + 1)
        except BudgetExhausted:
            budget_dead = True
        if not budget_dead:
            for p in small_primes(bound):
                if p * p > remaining:
                    break
                if remaining % p == 0 and record(p):
                    stopped = True
                    break
            if not stopped and 1 < remaining < (bound + 1) ** 2:
                # every prime factor left exceeds bound, so a composite
                # remainder would be >= (bound+1)^2; this one is prime.
                # (strict: remaining == (bound+1)^2 can be a prime square)
                stopped = record(remaining)

    pending = [remaining] if not stopped and remaining > 1 else []
    while pending and not stopped:
        m = pending.pop()
        if is_probable_prime(m):
            stopped = record(m)
            continue
        if budget_dead:
            continue  # m stays inside `remaining` as part of the cofactor
        try:
            g = _find_divisor(m, policy, meter)
        except BudgetExhausted:
            budget_dead = True
            continue
        if g is None:
            continue  # methods exhausted on this composite
        pending.extend(sorted((g, m // g), reverse=True))

    factors = tuple(sorted(found.items()))
    return Factorization(target=n, factors=factors, cofactor=remaining)


# ---------------------------------------------------------------------------
# derived quantities


def euler_phi(f: Factorization) -> int:
    """Euler's totient from a complete factorization; phi(1) == 1."""
    if not f.complete:
        raise ValueError("totient is undefined for a partial factorization")
    phi = 1
    for p, e in f.factors:
        phi *= p ** (e - 1) * (p - 1)
    return phi


def omega(f: Factorization) -> int:
    """Number of distinct prime divisors; requires completeness."""
    if not f.complete:
        raise ValueError("omega is undefined for a partial factorization")
    return len(f.factors)


def nu2(n: int) -> int:
    """2-adic valuation of n >= 1 (count of trailing zero bits)."""
    if n < 1:
        raise ValueError("valuation of 0 is infinite")
    return (n & -n).bit_length() - 1


def nu_p(n: int, p: int) -> int:
    """p-adic valuation of n >= 1 for prime p."""
    if n < 1:
        raise ValueError("valuation of 0 is infinite")
    if p == 2:
        return nu2(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def is_squarefree(f: Factorization) -> Squarefree:
    """Tri-state squarefreeness from possibly partial factor data.

    A repeated listed prime settles NO even when the factorization is
    incomplete; YES needs completeness; anything else is UNKNOWN.
    """
    if any(e >= 2 for _, e in f.factors):
        return Squarefree.NO
    if f.complete:
        return Squarefree.YES
    return Squarefree.UNKNOWN
