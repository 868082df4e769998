import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from periodfa import crt_pair, decompose
from periodfa.modular import divisors_ascending


def brute_decompose(p, b):
    """Exhaustive reference: scan all divisors for the coprime part."""
    k = max(q for q in range(1, p + 1) if p % q == 0 and math.gcd(q, b) == 1)
    d = p // k
    j = 0
    while b**j % d != 0:
        j += 1
    psi = 1
    if k > 1:
        while pow(b, psi, k) != 1:
            psi += 1
    return k, d, j, psi


def test_example_12_2():
    dec = decompose(12, 2)
    assert (dec.coprime_part, dec.base_part) == (3, 4)
    assert dec.base_part_exponent == 2
    assert dec.multiplicative_order == 2


def test_degenerate_period_one():
    dec = decompose(1, 2)
    assert (dec.coprime_part, dec.base_part) == (1, 1)
    assert dec.base_part_exponent == 0
    assert dec.multiplicative_order == 1


def test_example_40_2():
    dec = decompose(40, 2)
    assert (dec.coprime_part, dec.base_part) == (5, 8)
    assert dec.base_part_exponent == 3
    assert dec.multiplicative_order == 4


def test_invalid_period():
    with pytest.raises(ValueError):
        decompose(0, 2)
    with pytest.raises(ValueError):
        decompose(2**31 + 1, 2)
    with pytest.raises(ValueError):
        decompose(5, 1)


def test_exhaustive_agreement():
    for b in (2, 3, 10):
        for p in range(1, 501):
            dec = decompose(p, b)
            assert (
                dec.coprime_part,
                dec.base_part,
                dec.base_part_exponent,
                dec.multiplicative_order,
            ) == brute_decompose(p, b)


def test_invariants():
    for b in (2, 3, 10):
        for p in range(1, 301):
            dec = decompose(p, b)
            k, d = dec.coprime_part, dec.base_part
            assert k * d == p
            assert math.gcd(k, b) == 1
            assert math.gcd(k, d) == 1
            # maximality: every divisor coprime with b divides k
            for q in divisors_ascending(p):
                if math.gcd(q, b) == 1:
                    assert k % q == 0
            assert b**dec.base_part_exponent % d == 0
            if dec.base_part_exponent > 0:
                assert b ** (dec.base_part_exponent - 1) % d != 0
            if k > 1:
                assert pow(b, dec.multiplicative_order, k) == 1
                for e in range(1, dec.multiplicative_order):
                    assert pow(b, e, k) != 1


def test_crt_zero():
    assert crt_pair(0, 0, decompose(12, 2)) == 0


def test_crt_example():
    # scan 0..11 for n = 2 mod 3 and 1 mod 4 gives 5
    dec = decompose(12, 2)
    assert crt_pair(2, 1, dec) == 5


def test_crt_roundtrip_and_bijection():
    for p, b in ((12, 2), (40, 2), (45, 10), (7, 3), (1, 2), (8, 2)):
        dec = decompose(p, b)
        k, d = dec.coprime_part, dec.base_part
        seen = set()
        for n in range(p):
            assert crt_pair(n % k, n % d, dec) == n
        for s in range(k):
            for t in range(d):
                seen.add(crt_pair(s, t, dec))
        assert seen == set(range(p))


def test_crt_out_of_range():
    dec = decompose(12, 2)
    with pytest.raises(ValueError):
        crt_pair(3, 0, dec)
    with pytest.raises(ValueError):
        crt_pair(0, 4, dec)
    with pytest.raises(ValueError):
        crt_pair(-1, 0, dec)


@given(st.integers(min_value=1, max_value=3000), st.sampled_from([2, 3, 10]))
def test_crt_roundtrip_property(p, b):
    dec = decompose(p, b)
    k, d = dec.coprime_part, dec.base_part
    for n in (0, p - 1, p // 2):
        assert crt_pair(n % k, n % d, dec) == n


def test_divisors():
    assert divisors_ascending(1) == [1]
    assert divisors_ascending(12) == [1, 2, 3, 4, 6, 12]
    assert divisors_ascending(49) == [1, 7, 49]
