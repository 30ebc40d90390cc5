"""Algorithm plans and their registered CSF implementations.

Predicates here are specifications, not computations, so they use ordinary
Python arithmetic (including multiplication) freely.  The code blocks they
are paired with live in :mod:`.procedures`.
"""

from __future__ import annotations

from ..core import TRUE, Loop, ProcedureSpec, Straight, Subgoal, linear_cap, log_cap
from . import procedures as code


def _bits_upto(b, j):
    """sum(2^i * b[i] for i in 0..j); IndexError past the end of b."""
    return sum(2**i * b[i] for i in range(j + 1))


def _is_binary(n, b, k):
    """b[0..k] are the binary digits of n with a leading one (zero is ``[0]``)."""
    return (
        k >= 0
        and len(b) == k + 1
        and all(x in (0, 1) for x in b)
        and _bits_upto(b, k) == n
        and (b[k] == 1 or n == 0)
    )


def _n_nonneg(p, s):
    return p.N >= 0


def _post_cube(p, s):
    return s.c == p.N**3


# -- Version 1 ---------------------------------------------------------------

V1 = ProcedureSpec(
    name="v1",
    description="c = N^2 * N by two accumulation loops",
    pre=_n_nonneg,
    inv=TRUE,
    post=_post_cube,
    subgoals=(
        Subgoal("Square", lambda p, s: s.s == p.N**2, pragmatic=True, constant_only=True,
                formula="s = N^2"),
        Subgoal("Cube", lambda p, s: s.c == p.N**3, formula="c = N^3"),
    ),
    blocks=(
        Loop((0,), code.v1_open, code.v1_square_body, lambda p: linear_cap(p.N),
             init=code.v1_square_init),
        Loop((1,), code.v1_open, code.v1_cube_body, lambda p: linear_cap(p.N),
             init=code.v1_cube_init),
    ),
    result="c",
    param_scalars=("N",),
    state_scalars=("c", "s"),
)


# -- Versions 2 and 3 ------------------------------------------------------------


def _cube_so_far(p, s):
    return s.c == s.r**3 and s.r <= p.N


def _particularized(p, s):
    return s.r == p.N


V2 = ProcedureSpec(
    name="v2",
    description="incremental cube restoring c = r^3 with the possessed square",
    pre=_n_nonneg,
    inv=TRUE,
    post=_post_cube,
    subgoals=(
        Subgoal("Cube", _cube_so_far, formula="c = r^3 AND r <= N"),
        Subgoal("Square", lambda p, s: s.s == s.r**2, pragmatic=True, formula="s = r^2"),
        Subgoal("Particularized", _particularized, formula="r = N"),
    ),
    blocks=(
        Straight((0, 1), code.v2_init),
        Loop((2,), code.r_below_n, code.v2_body, lambda p: linear_cap(p.N)),
    ),
    result="c",
    param_scalars=("N",),
    state_scalars=("c", "r", "s"),
)

V3 = ProcedureSpec(
    name="v3",
    description="finite-difference cube",
    pre=_n_nonneg,
    inv=TRUE,
    post=_post_cube,
    subgoals=(
        Subgoal("Cube", _cube_so_far, formula="c = r^3 AND r <= N"),
        Subgoal("Quadratic", lambda p, s: s.q == 3 * s.r**2 + 3 * s.r + 1, pragmatic=True,
                formula="q = 3r^2 + 3r + 1"),
        Subgoal("Linear", lambda p, s: s.l == 6 * s.r + 6, pragmatic=True, formula="l = 6r + 6"),
        Subgoal("Particularized", _particularized, formula="r = N"),
    ),
    blocks=(
        Straight((0, 1, 2), code.v3_init),
        Loop((3,), code.r_below_n, code.v3_body, lambda p: linear_cap(p.N)),
    ),
    result="c",
    param_scalars=("N",),
    state_scalars=("c", "l", "q", "r"),
)


# -- getBin --------------------------------------------------------------------


def _log_n(p, s):
    return s.k >= 0 and 2**s.k <= p.N < 2 ** (s.k + 1)


def _powers_upto(t, last):
    return len(t) == last + 1 and all(t[i] == 2**i for i in range(last + 1))


def _tail(p, s):
    b, j, k = s.b, s.j, s.k
    return (
        len(b) == k + 1
        and 0 <= j <= k
        and all(b[i] in (0, 1) for i in range(j, k + 1))
        and p.N == s.m + sum(2**i * b[i] for i in range(j, k + 1))
    )


def _post_binary(p, s):
    return _is_binary(p.N, s.b, len(s.b) - 1)


def _log_cap(p):
    return log_cap(p.N)


GETBIN = ProcedureSpec(
    name="getbin",
    description="binary digits of N, least significant first",
    pre=lambda p, s: p.N >= 1,
    inv=TRUE,
    post=_post_binary,
    subgoals=(
        Subgoal("Log N", _log_n, constant_only=True, formula="2^k <= N < 2^(k+1)"),
        Subgoal("Powers of 2", lambda p, s: _powers_upto(s.t, s.k), pragmatic=True,
                constant_only=True, formula="t = {1, 2, 4, ..., 2^k}"),
        Subgoal("Tail of binary", _tail, formula="N = m + 2^j b[j] + ... + 2^k b[k]"),
        Subgoal("Complete", lambda p, s: s.j == 0 and s.m == 0, formula="j = 0 AND m = 0"),
    ),
    blocks=(
        Loop((0,), code.log_guard, code.log_body, _log_cap, init=code.log_init),
        Loop((1,), code.powers_guard, code.powers_body, _log_cap, init=code.powers_init),
        Straight((2,), code.tail_init),
        Loop((3,), code.descend_guard, code.descend_body, _log_cap),
    ),
    result="b",
    param_scalars=("N",),
    state_scalars=("j", "k", "m"),
    state_arrays=("b", "t"),
)


# -- Version 4 -----------------------------------------------------------------


def _n_in_binary(p, s):
    return _is_binary(p.N, s.b, s.k)


V4 = ProcedureSpec(
    name="v4",
    description="N^2 and N^3 by binary multiply-by-addition",
    pre=_n_nonneg,
    inv=TRUE,
    post=_post_cube,
    subgoals=(
        Subgoal("N in binary", _n_in_binary, pragmatic=True,
                formula="N = b[0] + 2b[1] + ... + 2^k b[k]"),
        Subgoal("Square", lambda p, s: s.s == p.N**2, pragmatic=True, formula="s = N^2"),
        Subgoal("Cube", lambda p, s: s.c == p.N**3, formula="c = N^3"),
    ),
    blocks=(
        Straight((0,), code.binary_digits),
        Straight((1,), code.v4_square),
        Straight((2,), code.v4_cube),
    ),
    result="c",
    param_scalars=("N",),
    state_scalars=("c", "k", "s"),
    state_arrays=("b",),
)


# -- Version 5 -----------------------------------------------------------------


def _r(s):
    return _bits_upto(s.b, s.j)


def _v5_cube(p, s):
    return 0 <= s.j <= s.k and s.c == _r(s) ** 3


def _square_term(p, s):
    return s.j >= 0 and s.s == 2**s.j * _r(s) ** 2


def _linear_term(p, s):
    return s.j >= 0 and s.l == 2 ** (2 * s.j) * _r(s)


V5 = ProcedureSpec(
    name="v5",
    description="finite-difference cube over the binary digits of N",
    pre=_n_nonneg,
    inv=TRUE,
    post=_post_cube,
    subgoals=(
        Subgoal("N in binary", _n_in_binary, constant_only=True,
                formula="N = b[0] + 2b[1] + ... + 2^k b[k] AND b[k] = 1"),
        Subgoal("Powers of 2", lambda p, s: _powers_upto(s.t, 3 * s.k + 1), pragmatic=True,
                constant_only=True, formula="t = {1, 2, 4, ..., 2^(3k+1)}"),
        Subgoal("Cube", _v5_cube, formula="c = r^3, r = b[0] + ... + 2^j b[j], j <= k"),
        Subgoal("Square term", _square_term, pragmatic=True, formula="s = 2^j r^2"),
        Subgoal("Linear term", _linear_term, pragmatic=True, formula="l = 2^(2j) r"),
        Subgoal("Particularized", lambda p, s: s.j == s.k, formula="j = k"),
    ),
    blocks=(
        Straight((0,), code.binary_digits),
        Straight((1,), code.v5_powers),
        Straight((2, 3, 4), code.v5_init),
        Loop((5,), code.j_below_k, code.v5_body, _log_cap),
    ),
    result="c",
    param_scalars=("N",),
    state_scalars=("c", "j", "k", "l", "s"),
    state_arrays=("b", "t"),
)


# -- N^M -------------------------------------------------------------------------


def _power_so_far(p, s):
    return 1 <= s.m <= p.M and s.c == p.N**s.m


POW = ProcedureSpec(
    name="pow",
    description="N^M by M-1 binary multiply-by-addition steps",
    pre=lambda p, s: p.N >= 0 and p.M >= 1,
    inv=TRUE,
    post=lambda p, s: s.c == p.N**p.M,
    subgoals=(
        Subgoal("N in binary", _n_in_binary, pragmatic=True, constant_only=True,
                formula="N = b[0] + 2b[1] + ... + 2^k b[k]"),
        Subgoal("Power", _power_so_far, formula="c = N^m AND 1 <= m <= M"),
        Subgoal("Particularized", lambda p, s: s.m == p.M, formula="m = M"),
    ),
    blocks=(
        Straight((0,), code.binary_digits),
        Straight((1,), code.pow_init),
        Loop((2,), code.m_below_m, code.pow_body, lambda p: linear_cap(p.M)),
    ),
    result="c",
    param_scalars=("M", "N"),
    state_scalars=("c", "k", "m"),
    state_arrays=("b",),
)


# -- getMax ----------------------------------------------------------------------


def _max_prefix(p, s):
    a, i, r, best = p.anArr, s.i, s.r, s.returnI
    return 0 <= r < len(a) and best == a[r] and 0 <= i < len(a) and max(a[: i + 1]) <= best


def _max_post(p, s):
    a, best = p.anArr, s.returnI
    return best in a and best == max(a)


GETMAX = ProcedureSpec(
    name="getmax",
    description="maximum of a nonempty array (first occurrence on ties)",
    pre=lambda p, s: len(p.anArr) >= 1,
    inv=TRUE,
    post=_max_post,
    subgoals=(
        Subgoal("Running max", _max_prefix,
                formula="returnI = anArr[r] AND returnI >= anArr[j] for j = 0..i"),
        Subgoal("Scanned", lambda p, s: s.i == len(p.anArr) - 1, formula="i = anArr.length - 1"),
    ),
    blocks=(
        Straight((0,), code.max_init),
        Loop((1,), code.max_guard, code.max_body, lambda p: linear_cap(len(p.anArr))),
    ),
    result="returnI",
    param_arrays=("anArr",),
    state_scalars=("i", "r", "returnI"),
)


ALL_SPECS = (V1, V2, V3, V4, V5, GETBIN, GETMAX, POW)
