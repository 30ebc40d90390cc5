"""Procedure code: compiled kernels and the CSF code blocks built from them.

Each algorithm is split into small compiled *start*/*step* functions.  The
fast kernels loop over them directly; the block transforms further down run
the very same functions one checkpoint at a time under
:func:`csfkit.core.run_procedure`, so the checked and unchecked paths perform
identical counted arithmetic.

This module holds no arithmetic or comparison operators of its own: every
sum, difference and test goes through :mod:`csfkit.addonly`.  A test audits
that by walking the syntax tree.
"""

import numpy as np
from numba import njit

from ..addonly import (
    add,
    add_const_times,
    eq,
    ge,
    gt,
    le,
    lt,
    note_assigns,
    select_by_bit,
    sub,
)


@njit(cache=True)
def new_digits(tally, k):
    """Zeroed array with indices ``0..k``."""
    return np.zeros(add(tally, k, 1), np.int64)


# -- Version 1: two accumulation loops -------------------------------------


@njit(cache=True)
def countdown_start(tally, n):
    note_assigns(tally, 2)
    return 0, n


@njit(cache=True)
def countdown_open(tally, i):
    return gt(tally, i, 0)


@njit(cache=True)
def accumulate_step(tally, acc, x, i):
    note_assigns(tally, 2)
    return add(tally, acc, x), sub(tally, i, 1)


@njit(cache=True)
def cube_v1_kernel(tally, n):
    s, i = countdown_start(tally, n)
    while countdown_open(tally, i):
        s, i = accumulate_step(tally, s, n, i)
    c, i = countdown_start(tally, n)
    while countdown_open(tally, i):
        c, i = accumulate_step(tally, c, s, i)
    return c


# -- Version 2: possess the square -----------------------------------------


@njit(cache=True)
def v2_start(tally):
    note_assigns(tally, 3)
    return 0, 0, 0


@njit(cache=True)
def v2_step(tally, r, c, s):
    # r, c, s := r+1, c + 3*(s+r) + 1, s + 2*r + 1
    c_next = add(tally, add(tally, c, add_const_times(tally, 3, add(tally, s, r))), 1)
    s_next = add(tally, add(tally, s, add_const_times(tally, 2, r)), 1)
    note_assigns(tally, 3)
    return add(tally, r, 1), c_next, s_next


@njit(cache=True)
def cube_v2_kernel(tally, n):
    r, c, s = v2_start(tally)
    while lt(tally, r, n):
        r, c, s = v2_step(tally, r, c, s)
    return c


# -- Version 3: finite differences ------------------------------------------


@njit(cache=True)
def v3_start(tally):
    note_assigns(tally, 4)
    return 0, 0, 1, 6


@njit(cache=True)
def v3_step(tally, r, c, q, l):
    note_assigns(tally, 4)
    return add(tally, r, 1), add(tally, c, q), add(tally, q, l), add(tally, l, 6)


@njit(cache=True)
def cube_v3_kernel(tally, n):
    r, c, q, l = v3_start(tally)
    while lt(tally, r, n):
        r, c, q, l = v3_step(tally, r, c, q, l)
    return c


# -- getBin ------------------------------------------------------------------


@njit(cache=True)
def log_start(tally):
    note_assigns(tally, 2)
    return 0, 1


@njit(cache=True)
def log_open(tally, n, p):
    # p + p <= n, phrased so the test itself cannot overflow
    return le(tally, p, sub(tally, n, p))


@njit(cache=True)
def log_step(tally, k, p):
    note_assigns(tally, 2)
    return add(tally, k, 1), add(tally, p, p)


@njit(cache=True)
def powers_start(tally, k):
    t = new_digits(tally, k)
    t[0] = 1
    note_assigns(tally, 2)
    return t, 0


@njit(cache=True)
def powers_step(tally, t, i):
    nxt = add(tally, i, 1)
    t[nxt] = add(tally, t[i], t[i])
    note_assigns(tally, 2)
    return nxt


@njit(cache=True)
def powers_table(tally, k):
    t, i = powers_start(tally, k)
    while lt(tally, i, k):
        i = powers_step(tally, t, i)
    return t


@njit(cache=True)
def tail_start(tally, n, t, k):
    # j, b[k], m := k, 1, N - t[k]
    b = new_digits(tally, k)
    b[k] = 1
    note_assigns(tally, 3)
    return k, b, sub(tally, n, t[k])


@njit(cache=True)
def descend_open(tally, j):
    return gt(tally, j, 0)


@njit(cache=True)
def descend_step(tally, t, b, j, m):
    j = sub(tally, j, 1)
    note_assigns(tally, 1)
    if ge(tally, m, t[j]):
        b[j] = 1
        m = sub(tally, m, t[j])
        note_assigns(tally, 2)
    return j, m


@njit(cache=True)
def get_bin_kernel(tally, n):
    k, p = log_start(tally)
    while log_open(tally, n, p):
        k, p = log_step(tally, k, p)
    t = powers_table(tally, k)
    j, b, m = tail_start(tally, n, t, k)
    while descend_open(tally, j):
        j, m = descend_step(tally, t, b, j, m)
    return b, k


@njit(cache=True)
def digits_of(tally, n):
    """Binary digits of ``n``; zero has no leading one and gets ``[0]``, k = 0."""
    if eq(tally, n, 0):
        note_assigns(tally, 2)
        return new_digits(tally, 0), 0
    return get_bin_kernel(tally, n)


# -- addArg1Arg2Times --------------------------------------------------------


@njit(cache=True)
def times_start(tally, x, b):
    note_assigns(tally, 3)
    return select_by_bit(tally, b[0], x), x, 0


@njit(cache=True)
def times_step(tally, b, acc, d, i):
    i = add(tally, i, 1)
    d = add(tally, d, d)
    note_assigns(tally, 3)
    return add(tally, acc, select_by_bit(tally, b[i], d)), d, i


@njit(cache=True)
def times_kernel(tally, x, b, k):
    """``x`` times the number whose digits are ``b[0..k]``, by doubling."""
    acc, d, i = times_start(tally, x, b)
    while lt(tally, i, k):
        acc, d, i = times_step(tally, b, acc, d, i)
    return acc


# -- Version 4 and N^M ---------------------------------------------------------


@njit(cache=True)
def cube_v4_kernel(tally, n):
    b, k = digits_of(tally, n)
    s = times_kernel(tally, n, b, k)
    return times_kernel(tally, s, b, k)


@njit(cache=True)
def power_start(tally, n):
    note_assigns(tally, 2)
    return n, 1


@njit(cache=True)
def power_step(tally, b, k, c, m):
    note_assigns(tally, 2)
    return times_kernel(tally, c, b, k), add(tally, m, 1)


@njit(cache=True)
def pow_kernel(tally, n, big_m):
    b, k = digits_of(tally, n)
    c, m = power_start(tally, n)
    while lt(tally, m, big_m):
        c, m = power_step(tally, b, k, c, m)
    return c


# -- Version 5: binary finite differences --------------------------------------


@njit(cache=True)
def v5_table(tally, k):
    # t[0..3k+1]
    return powers_table(tally, add(tally, add_const_times(tally, 3, k), 1))


@njit(cache=True)
def v5_start(tally, b):
    note_assigns(tally, 4)
    return 0, b[0], b[0], b[0]


@njit(cache=True)
def v5_step(tally, b, t, j, c, s, l):
    # c, s, l := c + u*(6s + 12l + v), 2s + u*(8l + v), 4l + u*v
    # with 6s + 12l taken as 6(s + 2l) and 8l as 4l + 4l
    j = add(tally, j, 1)
    u = b[j]
    v = t[add_const_times(tally, 3, j)]
    l4 = add_const_times(tally, 4, l)
    c_term = add(tally, add_const_times(tally, 6, add(tally, s, add(tally, l, l))), v)
    c_next = add(tally, c, select_by_bit(tally, u, c_term))
    s_next = add(tally, add_const_times(tally, 2, s), select_by_bit(tally, u, add(tally, add(tally, l4, l4), v)))
    l_next = add(tally, l4, select_by_bit(tally, u, v))
    note_assigns(tally, 6)
    return j, c_next, s_next, l_next


@njit(cache=True)
def cube_v5_kernel(tally, n):
    b, k = digits_of(tally, n)
    t = v5_table(tally, k)
    j, c, s, l = v5_start(tally, b)
    while lt(tally, j, k):
        j, c, s, l = v5_step(tally, b, t, j, c, s, l)
    return c


# -- getMax ----------------------------------------------------------------------


@njit(cache=True)
def max_start(tally, arr):
    # i, r, returnI := 0, 0, anArr[0]; last is the final index
    note_assigns(tally, 4)
    return 0, 0, arr[0], sub(tally, len(arr), 1)


@njit(cache=True)
def max_step(tally, arr, i, r, best):
    i = add(tally, i, 1)
    note_assigns(tally, 1)
    if gt(tally, arr[i], best):
        note_assigns(tally, 2)
        return i, i, arr[i]
    return i, r, best


@njit(cache=True)
def get_max_kernel(tally, arr):
    i, r, best, last = max_start(tally, arr)
    while lt(tally, i, last):
        i, r, best = max_step(tally, arr, i, r, best)
    return best


# -- CSF code blocks -----------------------------------------------------------
# Block transforms take (params, state, tally) and update the state in place.


def v1_square_init(p, st, tally):
    st.s, st.i = countdown_start(tally, p.N)


def v1_cube_init(p, st, tally):
    st.c, st.i = countdown_start(tally, p.N)


def v1_open(p, st, tally):
    return countdown_open(tally, st.i)


def v1_square_body(p, st, tally):
    st.s, st.i = accumulate_step(tally, st.s, p.N, st.i)


def v1_cube_body(p, st, tally):
    st.c, st.i = accumulate_step(tally, st.c, st.s, st.i)


def r_below_n(p, st, tally):
    return lt(tally, st.r, p.N)


def v2_init(p, st, tally):
    st.r, st.c, st.s = v2_start(tally)


def v2_body(p, st, tally):
    st.r, st.c, st.s = v2_step(tally, st.r, st.c, st.s)


def v3_init(p, st, tally):
    st.r, st.c, st.q, st.l = v3_start(tally)


def v3_body(p, st, tally):
    st.r, st.c, st.q, st.l = v3_step(tally, st.r, st.c, st.q, st.l)


def log_init(p, st, tally):
    st.k, st.p = log_start(tally)


def log_guard(p, st, tally):
    return log_open(tally, p.N, st.p)


def log_body(p, st, tally):
    st.k, st.p = log_step(tally, st.k, st.p)


def powers_init(p, st, tally):
    st.t, st.i = powers_start(tally, st.k)


def powers_guard(p, st, tally):
    return lt(tally, st.i, st.k)


def powers_body(p, st, tally):
    st.i = powers_step(tally, st.t, st.i)


def tail_init(p, st, tally):
    st.j, st.b, st.m = tail_start(tally, p.N, st.t, st.k)


def descend_guard(p, st, tally):
    return descend_open(tally, st.j)


def descend_body(p, st, tally):
    st.j, st.m = descend_step(tally, st.t, st.b, st.j, st.m)


def binary_digits(p, st, tally):
    st.b, st.k = digits_of(tally, p.N)


def v4_square(p, st, tally):
    st.s = times_kernel(tally, p.N, st.b, st.k)


def v4_cube(p, st, tally):
    st.c = times_kernel(tally, st.s, st.b, st.k)


def v5_powers(p, st, tally):
    st.t = v5_table(tally, st.k)


def v5_init(p, st, tally):
    st.j, st.c, st.s, st.l = v5_start(tally, st.b)


def j_below_k(p, st, tally):
    return lt(tally, st.j, st.k)


def v5_body(p, st, tally):
    st.j, st.c, st.s, st.l = v5_step(tally, st.b, st.t, st.j, st.c, st.s, st.l)


def pow_init(p, st, tally):
    st.c, st.m = power_start(tally, p.N)


def m_below_m(p, st, tally):
    return lt(tally, st.m, p.M)


def pow_body(p, st, tally):
    st.c, st.m = power_step(tally, st.b, st.k, st.c, st.m)


def as_int64(values):
    return np.asarray(values, dtype=np.int64)


def max_init(p, st, tally):
    st.i, st.r, st.returnI, st.last = max_start(tally, as_int64(p.anArr))


def max_guard(p, st, tally):
    return lt(tally, st.i, st.last)


def max_body(p, st, tally):
    st.i, st.r, st.returnI = max_step(tally, as_int64(p.anArr), st.i, st.r, st.returnI)
