"""Big-integer number theory: gcd, square roots, primality, factoring, lifts.

Everything here is deterministic: internal randomness (Miller-Rabin rounds
above 2^64, Pollard-rho parameters) is seeded from the input itself, so a
call always returns the same answer.  The only caller-supplied randomness is
the explicit rng handle of random_prime.
"""

from __future__ import annotations

import math
import random

from .errors import NonResidue, NotCoprime

FactorMultiset = list[tuple[int, int]]

_TRIAL_LIMIT = 10_000


def _sieve(limit: int) -> list[int]:
    flags = bytearray([1]) * limit
    flags[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(range(i * i, limit, i)))
    return [i for i in range(limit) if flags[i]]


_SMALL_PRIMES = _sieve(_TRIAL_LIMIT)

# Deterministic Miller-Rabin witness set for n < 3.3 * 10^24 (covers 2^64).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def ext_gcd(x: int, y: int) -> tuple[int, int, int]:
    """Extended Euclid: returns (g, u, v) with g = gcd(x, y) > 0 and u*x + v*y = g."""
    if x == 0 and y == 0:
        raise ValueError("gcd(0, 0) is undefined")
    old_r, r = x, y
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def mod_inv(x: int, m: int) -> int:
    """Inverse of x modulo m, in [1, m)."""
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    g, u, _ = ext_gcd(x % m, m)
    if g != 1:
        raise NotCoprime(f"{x} is not invertible mod {m} (gcd {g})")
    return u % m


def legendre(x: int, p: int) -> int:
    """Legendre symbol by Euler's criterion: +1 iff x is a nonzero square mod p."""
    r = x % p
    if r == 0:
        return 0
    return 1 if pow(r, (p - 1) // 2, p) == 1 else -1


def sqrt_mod(x: int, p: int) -> int:
    """Square root of x modulo an odd prime p; returns the smaller of the two roots."""
    r = x % p
    if r == 0:
        return 0
    if legendre(r, p) == -1:
        raise NonResidue(f"{x} is not a square mod {p}")
    if p % 4 == 3:
        root = pow(r, (p + 1) // 4, p)
    else:
        root = _tonelli_shanks(r, p)
    return min(root, p - root)


def _tonelli_shanks(r: int, p: int) -> int:
    # p = 1 mod 4, r a known residue.
    s, e = p - 1, 0
    while s % 2 == 0:
        s //= 2
        e += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    x = pow(r, (s + 1) // 2, p)
    b = pow(r, s, p)
    g = pow(z, s, p)
    k = e
    while b != 1:
        t, m = b, 0
        while t != 1:
            t = t * t % p
            m += 1
        gs = pow(g, 1 << (k - m - 1), p)
        x = x * gs % p
        g = gs * gs % p
        b = b * g % p
        k = m
    return x


def is_prime(n: int) -> bool:
    """Miller-Rabin: deterministic below 2^64, 40 derived-seed rounds above."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES[:64]:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < 1 << 64:
        bases = _MR_BASES
    else:
        rng = random.Random(n ^ 0x9E3779B97F4A7C15)
        bases = tuple(rng.randrange(2, n - 1) for _ in range(40))
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(bits: int, rng: random.Random) -> int:
    """A random prime with exactly `bits` bits."""
    if bits < 3:
        raise ValueError(f"need bits >= 3, got {bits}")
    while True:
        n = rng.randrange(1 << (bits - 1), 1 << bits) | 1
        if is_prime(n):
            return n


def next_prime(n: int) -> int:
    """Smallest prime >= n."""
    if n <= 2:
        return 2
    n |= 1
    while not is_prime(n):
        n += 2
    return n


def _pollard_brent(n: int, rng: random.Random, max_iterations: int | None = None) -> int | None:
    """A nontrivial factor of odd composite n (Brent's rho, batched gcds).

    Returns None only when max_iterations squarings were spent without a
    split; with the default unbounded budget a factor is always found.
    """
    spent = 0
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * (x - y) % n
                g = math.gcd(q, n)
                k += m
            spent += 2 * r
            if max_iterations is not None and spent > max_iterations and g == 1:
                return None
            r *= 2
        if g == n:
            # Batch overshoot: replay one step at a time from the last checkpoint.
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(x - ys, n)
        if g != n:
            return g
        # Cycle degenerated; retry with fresh parameters.


def _factor_into(n: int, counts: dict[int, int], max_iterations: int | None) -> bool:
    """Factor n (free of primes < 10^4) into counts; False on budget exhaustion."""
    rng = random.Random(n ^ 0xD1B54A32D192ED03)
    stack = [n]
    while stack:
        m = stack.pop()
        if is_prime(m):
            counts[m] = counts.get(m, 0) + 1
            continue
        f = _pollard_brent(m, rng, max_iterations)
        if f is None:
            return False
        stack.append(f)
        stack.append(m // f)
    return True


def _trial_divide(n: int, counts: dict[int, int]) -> int:
    for q in _SMALL_PRIMES:
        if q * q > n:
            break
        while n % q == 0:
            counts[q] = counts.get(q, 0) + 1
            n //= q
    return n


def factorize(n: int) -> FactorMultiset:
    """Complete prime factorization as sorted (prime, exponent) pairs.

    Trial division by primes below 10^4, then Pollard-rho splitting with
    Miller-Rabin certification of every cofactor.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    counts: dict[int, int] = {}
    n = _trial_divide(n, counts)
    if n > 1:
        _factor_into(n, counts, None)
    return sorted(counts.items())


def try_factorize(n: int, max_rho_iterations: int) -> FactorMultiset | None:
    """factorize with a deterministic effort bound on the rho stage.

    Returns None when a cofactor resists splitting within the budget; used
    to skip lift candidates whose split would stall a desk-scale run.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    counts: dict[int, int] = {}
    n = _trial_divide(n, counts)
    if n > 1 and not _factor_into(n, counts, max_rho_iterations):
        return None
    return sorted(counts.items())


def _divisors_from(factors: FactorMultiset) -> list[int]:
    divs = [1]
    for q, e in factors:
        qe = 1
        extra = []
        for _ in range(e):
            qe *= q
            extra.extend(d * qe for d in divs)
        divs.extend(extra)
    return divs


_ENUMERATION_LIMIT = 1 << 16


def balanced_divisor(n: int) -> int:
    """The largest divisor of n not exceeding floor(sqrt(n)).

    Enumerates all divisors while their count stays below 2^16, otherwise
    meets in the middle over the two halves of the factor multiset.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return balanced_divisor_from_factors(n, factorize(n))


def balanced_divisor_from_factors(n: int, factors: FactorMultiset) -> int:
    """balanced_divisor when the factorization of n is already known."""
    target = math.isqrt(n)
    count = 1
    for _, e in factors:
        count *= e + 1
    if count <= _ENUMERATION_LIMIT:
        return max(d for d in _divisors_from(factors) if d <= target)
    import bisect

    left = _divisors_from(factors[0::2])
    right = sorted(_divisors_from(factors[1::2]))
    best = 1
    for d in left:
        if d > target:
            continue
        i = bisect.bisect_right(right, target // d)
        if i:
            best = max(best, d * right[i - 1])
    return best


def coprime_lift(a: int, p: int) -> int:
    """The smallest d = a^-1 + k*p (k >= 0) with gcd(a, d) = 1.

    Sequential search over k; avoiding one residue class per distinct prime
    factor of a keeps the search depth below the next prime after the m-th.
    """
    if not 0 < a < p:
        raise ValueError(f"need 0 < a < p, got a={a}, p={p}")
    d = mod_inv(a, p)
    while math.gcd(a, d) != 1:
        d += p
    return d
