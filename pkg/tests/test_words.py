import pytest
from hypothesis import given
from hypothesis import strategies as st

from periodfa import repr_of, value_of


def test_empty_word_is_zero():
    assert value_of([], 2) == 0


def test_binary_values():
    assert value_of([1, 0, 1], 2) == 5
    assert value_of([0, 1, 0, 1], 2) == 5  # leading zeros preserve value


def test_digit_out_of_range():
    with pytest.raises(ValueError):
        value_of([2], 2)
    with pytest.raises(ValueError):
        value_of([-1], 2)


def test_repr_examples():
    assert repr_of(0, 2) == ()
    assert repr_of(5, 2) == (1, 0, 1)
    assert repr_of(40, 2) == (1, 0, 1, 0, 0, 0)


def test_repr_rejects_negative():
    with pytest.raises(ValueError):
        repr_of(-1, 2)


def test_roundtrip_dense():
    for base in (2, 3, 10):
        for n in range(2000):
            word = repr_of(n, base)
            assert value_of(word, base) == n
            assert word == () or word[0] != 0


@given(st.integers(min_value=0, max_value=10**9), st.integers(min_value=2, max_value=16))
def test_roundtrip_property(n, base):
    word = repr_of(n, base)
    assert value_of(word, base) == n
    assert word == () or word[0] != 0


@given(st.integers(min_value=2, max_value=10), st.lists(st.integers(min_value=0, max_value=9)))
def test_leading_zeros_never_change_value(base, digits):
    digits = [d % base for d in digits]
    assert value_of([0] + digits, base) == value_of(digits, base)
