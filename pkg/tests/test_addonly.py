import pytest
from hypothesis import given
from hypothesis import strategies as st

from csfkit.addonly import (
    ADDS,
    ASSIGNS,
    COMPARES,
    INT64_MAX,
    INT64_MIN,
    SELECTS,
    SUBS,
    ArithmeticOverflow,
    BitDomainError,
    OpCounter,
    add,
    add_const_times,
    compare,
    counter_snapshot,
    eq,
    ge,
    gt,
    le,
    lt,
    new_tally,
    note_assigns,
    select_by_bit,
    sub,
)

int64s = st.integers(INT64_MIN, INT64_MAX)


def test_add_and_sub_count_one_each():
    t = new_tally()
    assert add(t, 2, 3) == 5
    assert sub(t, 2, 3) == -1
    assert counter_snapshot(t) == OpCounter(adds=1, subs=1)


@pytest.mark.parametrize(
    "fn, a, b",
    [(add, INT64_MAX, 1), (add, INT64_MIN, -1), (sub, INT64_MIN, 1), (sub, INT64_MAX, -1)],
)
def test_overflow_at_the_edges(fn, a, b):
    with pytest.raises(ArithmeticOverflow):
        fn(new_tally(), a, b)


def test_overflow_is_an_overflow_error():
    assert issubclass(ArithmeticOverflow, OverflowError)


@given(int64s, int64s)
def test_add_is_exact_or_raises(a, b):
    t = new_tally()
    if INT64_MIN <= a + b <= INT64_MAX:
        assert add(t, a, b) == a + b
    else:
        with pytest.raises(ArithmeticOverflow):
            add(t, a, b)
    assert t[ADDS] == 1


@given(int64s, int64s)
def test_sub_is_exact_or_raises(a, b):
    t = new_tally()
    if INT64_MIN <= a - b <= INT64_MAX:
        assert sub(t, a, b) == a - b
    else:
        with pytest.raises(ArithmeticOverflow):
            sub(t, a, b)


@given(st.integers(-50, 50), st.integers(-50, 50))
def test_comparisons(a, b):
    t = new_tally()
    assert compare(t, a, b) == (a > b) - (a < b)
    assert (lt(t, a, b), le(t, a, b), gt(t, a, b), ge(t, a, b), eq(t, a, b)) == (
        a < b, a <= b, a > b, a >= b, a == b,
    )
    assert t[COMPARES] == 6


@given(st.integers(1, 16), st.integers(-100, 100))
def test_add_const_times_cost_and_value(p, q):
    t = new_tally()
    assert add_const_times(t, p, q) == p * q
    assert t[ADDS] == p - 1


@given(st.integers(1, 8), st.integers(1, 8), st.integers(-1000, 1000))
def test_add_const_times_is_additive_in_the_constant(p1, p2, q):
    t = new_tally()
    joint = add_const_times(t, p1 + p2, q)
    assert joint == add_const_times(t, p1, q) + add_const_times(t, p2, q)


@pytest.mark.parametrize("p", [0, -3])
def test_add_const_times_needs_a_positive_constant(p):
    with pytest.raises(ValueError):
        add_const_times(new_tally(), p, 5)


@given(st.sampled_from([0, 1]), int64s)
def test_select_by_bit(u, q):
    t = new_tally()
    assert select_by_bit(t, u, q) == (q if u else 0)
    assert counter_snapshot(t) == OpCounter(selects=1)


@pytest.mark.parametrize("u", [2, -1, 7])
def test_select_by_bit_rejects_non_bits(u):
    t = new_tally()
    with pytest.raises(BitDomainError):
        select_by_bit(t, u, 3)
    assert t[SELECTS] == 0


def test_note_assigns_and_slots():
    t = new_tally()
    note_assigns(t, 4)
    assert t[ASSIGNS] == 4 and t[SUBS] == 0


def test_op_counter_arithmetic():
    a = OpCounter(1, 2, 3, 4, 5)
    assert a + a == OpCounter(2, 4, 6, 8, 10)
    assert a.as_dict() == {"adds": 1, "subs": 2, "compares": 3, "selects": 4, "assigns": 5}
    assert not hasattr(a, "mults")
