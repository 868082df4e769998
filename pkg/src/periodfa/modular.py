"""Factoring a period against the numeration base, and the CRT pairing.

For a period p and a base b, p splits uniquely as p = coprime_part *
base_part where the coprime part is the greatest divisor of p coprime
with b, and every prime factor of the base part divides b.  The two
extra quantities carried by :class:`Decomposition` (the exponent of the
base part and the multiplicative order of b) bound how fast the
base-part information decays, respectively recurs, while digits are
read.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

PERIOD_CAP = 2**31


@dataclass(frozen=True)
class Decomposition:
    """Split of a period relative to a base.

    coprime_part * base_part == period, gcd(coprime_part, base) == 1,
    base_part divides base**base_part_exponent (with the exponent
    minimal), and base**multiplicative_order == 1 modulo coprime_part
    (again minimal, and taken to be 1 when coprime_part is 1).
    """

    period: int
    base: int
    coprime_part: int
    base_part: int
    base_part_exponent: int
    multiplicative_order: int


def decompose(period: int, base: int) -> Decomposition:
    """Split ``period`` against ``base``; see :class:`Decomposition`."""
    if base < 2:
        raise ValueError(f"base must be at least 2, got {base}")
    if period < 1:
        raise ValueError(f"period must be positive, got {period}")
    if period > PERIOD_CAP:
        raise ValueError(f"period {period} exceeds the supported cap {PERIOD_CAP}")

    # Strip every factor shared with the base; no factorisation needed.
    coprime = period
    g = math.gcd(coprime, base)
    while g > 1:
        coprime //= g
        g = math.gcd(coprime, base)
    smooth = period // coprime

    exponent = 0
    t = 1 % smooth if smooth > 1 else 0
    while t != 0:
        t = (t * base) % smooth
        exponent += 1

    if coprime == 1:
        order = 1
    else:
        order = 1
        t = base % coprime
        while t != 1:
            t = (t * base) % coprime
            order += 1

    return Decomposition(period, base, coprime, smooth, exponent, order)


def crt_pair(res_coprime: int, res_base_part: int, dec: Decomposition) -> int:
    """The unique n < period with the two given residues.

    n is congruent to ``res_coprime`` modulo the coprime part and to
    ``res_base_part`` modulo the base part.
    """
    k, d = dec.coprime_part, dec.base_part
    if not 0 <= res_coprime < k:
        raise ValueError(f"residue {res_coprime} out of range for modulus {k}")
    if not 0 <= res_base_part < d:
        raise ValueError(f"residue {res_base_part} out of range for modulus {d}")
    if k == 1:
        return res_base_part
    if d == 1:
        return res_coprime
    n = res_coprime * d * pow(d, -1, k) + res_base_part * k * pow(k, -1, d)
    return n % dec.period


def divisors_ascending(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i != n // i:
                large.append(n // i)
        i += 1
    return small + large[::-1]
