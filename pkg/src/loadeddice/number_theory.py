"""Fixed-point number systems of depth-k DDG trees and the minimal depth search.

A probability with an l-digit binary prefix and a (k-l)-digit repeating
suffix is a multiple of 1/Z(k, l), where Z(k, l) = 2**k - 2**l for l < k and
Z(k, k) = 2**k. The optimal sampler for weights with reduced modulus M has
depth equal to the smallest k for which some Z(k, l) is divisible by M.
"""

from dataclasses import dataclass

MAX_DEPTH = 62
MAX_SCAN_MODULUS = 1 << 31


@dataclass(frozen=True)
class DepthWitness:
    k: int
    l: int

    @property
    def Z(self):
        return (1 << self.k) - ((1 << self.l) if self.l < self.k else 0)

    @property
    def has_back_edge(self):
        return self.l < self.k


def z_value(k, l):
    if not 0 <= l <= k:
        raise ValueError(f"need 0 <= l <= k, got k={k}, l={l}")
    if k > MAX_DEPTH:
        raise OverflowError(f"Z({k}, {l}) does not fit in a 64-bit word")
    return DepthWitness(k, l).Z


def minimal_depth(M):
    """Smallest k, with witness l, such that M divides Z(k, l).

    Write M = 2**t * u with u odd. For l < k, M divides 2**l * (2**(k-l) - 1)
    exactly when l >= t and the order of 2 mod u divides k - l, so the
    smallest such k is t + ord_u(2) and its only witness is l = t. When
    u == 1 the dyadic witness k = l = t is smaller. M == 1 returns (1, 1)
    by convention.
    """
    if M < 1:
        raise ValueError(f"modulus must be positive, got {M}")
    if M > MAX_SCAN_MODULUS:
        raise OverflowError(f"modulus {M} exceeds the 2**31 limit")
    if M == 1:
        return DepthWitness(1, 1)
    t = (M & -M).bit_length() - 1
    u = M >> t
    if u == 1:
        return DepthWitness(t, t)
    return DepthWitness(t + multiplicative_order_2(u), t)


def prime_factors(m):
    """Distinct prime factors of m by trial division, ascending."""
    factors = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            factors.append(p)
            while m % p == 0:
                m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        factors.append(m)
    return factors


def is_prime(m):
    return m >= 2 and prime_factors(m) == [m]


def totient(m):
    if m < 1:
        raise ValueError(f"totient is defined for positive integers, got {m}")
    result = m
    for p in prime_factors(m):
        result -= result // p
    return result


def multiplicative_order_2(m):
    """Order of 2 in the unit group mod odd m > 1."""
    if m < 3 or m % 2 == 0:
        raise ValueError(f"order of 2 needs an odd modulus > 1, got {m}")
    phi = totient(m)
    order = phi
    for p in prime_factors(phi):
        while order % p == 0 and pow(2, order // p, m) == 1:
            order //= p
    return order


def is_primitive_root_2(m):
    if m < 3 or not is_prime(m):
        raise ValueError(f"{m} is not an odd prime")
    return all(pow(2, (m - 1) // q, m) != 1 for q in prime_factors(m - 1))
