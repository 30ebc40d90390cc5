"""Counted addition-only arithmetic.

Every primitive takes a *tally* (a length-5 ``int64`` array, see
:func:`new_tally`) as its first argument and bumps exactly one slot of it.
There is deliberately no general multiplication: products by a plan-time
constant are spelled as repeated addition (:func:`add_const_times`) and the
only other product is by a single bit (:func:`select_by_bit`).

The primitives are compiled with numba so the algorithm kernels that call
them run at native speed; they are equally callable from plain Python.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from numba import njit

__all__ = [
    "ADDS",
    "SUBS",
    "COMPARES",
    "SELECTS",
    "ASSIGNS",
    "INT64_MAX",
    "INT64_MIN",
    "ArithmeticOverflow",
    "BitDomainError",
    "OpCounter",
    "new_tally",
    "counter_snapshot",
    "add",
    "sub",
    "compare",
    "lt",
    "le",
    "gt",
    "ge",
    "eq",
    "add_const_times",
    "select_by_bit",
    "note_assigns",
]

ADDS, SUBS, COMPARES, SELECTS, ASSIGNS = range(5)
_FIELDS = ("adds", "subs", "compares", "selects", "assigns")

INT64_MAX = 2**63 - 1
INT64_MIN = -(2**63)


class ArithmeticOverflow(OverflowError):
    """A result left the signed 64-bit range."""


class BitDomainError(ValueError):
    """A bit argument was neither 0 nor 1."""


@dataclass(frozen=True)
class OpCounter:
    """Immutable snapshot of a tally.

    There is no field for general multiplication; see the module docstring.
    """

    adds: int = 0
    subs: int = 0
    compares: int = 0
    selects: int = 0
    assigns: int = 0

    def __add__(self, other: "OpCounter") -> "OpCounter":
        if not isinstance(other, OpCounter):
            return NotImplemented
        return OpCounter(*(a + b for a, b in zip(self.as_tuple(), other.as_tuple())))

    def as_tuple(self) -> tuple[int, ...]:
        return (self.adds, self.subs, self.compares, self.selects, self.assigns)

    def as_dict(self) -> dict[str, int]:
        return asdict(self)


def new_tally() -> np.ndarray:
    """Fresh all-zero counter context for one run."""
    return np.zeros(len(_FIELDS), dtype=np.int64)


def counter_snapshot(tally: np.ndarray) -> OpCounter:
    return OpCounter(*(int(v) for v in tally))


@njit(cache=True)
def add(tally, a, b):
    tally[ADDS] += 1
    # test before adding: compiled signed overflow is undefined, so a
    # wrapped-result check can be optimized away
    if (b > 0 and a > INT64_MAX - b) or (b < 0 and a < INT64_MIN - b):
        raise ArithmeticOverflow("int64 overflow in add")
    return a + b


@njit(cache=True)
def sub(tally, a, b):
    tally[SUBS] += 1
    if (b < 0 and a > INT64_MAX + b) or (b > 0 and a < INT64_MIN + b):
        raise ArithmeticOverflow("int64 overflow in sub")
    return a - b


@njit(cache=True)
def compare(tally, a, b):
    """Three-way comparison: -1, 0 or 1."""
    tally[COMPARES] += 1
    if a < b:
        return -1
    if a > b:
        return 1
    return 0


@njit(cache=True)
def lt(tally, a, b):
    tally[COMPARES] += 1
    return a < b


@njit(cache=True)
def le(tally, a, b):
    tally[COMPARES] += 1
    return a <= b


@njit(cache=True)
def gt(tally, a, b):
    tally[COMPARES] += 1
    return a > b


@njit(cache=True)
def ge(tally, a, b):
    tally[COMPARES] += 1
    return a >= b


@njit(cache=True)
def eq(tally, a, b):
    tally[COMPARES] += 1
    return a == b


@njit(cache=True)
def add_const_times(tally, p, q):
    """``p*q`` as ``q + q + ... + q``: exactly ``p - 1`` counted additions.

    ``p`` is a small positive constant fixed by the algorithm text.
    """
    if p < 1:
        raise ValueError("add_const_times needs a positive constant")
    acc = q
    for _ in range(p - 1):
        acc = add(tally, acc, q)
    return acc


@njit(cache=True)
def select_by_bit(tally, u, q):
    """``u*q`` for a bit ``u``, done by branching rather than multiplying."""
    if u != 0 and u != 1:
        raise BitDomainError("select_by_bit needs a bit (0 or 1)")
    tally[SELECTS] += 1
    if u == 1:
        return q
    return 0


@njit(cache=True)
def note_assigns(tally, n):
    """Record ``n`` targets written by one (possibly simultaneous) assignment."""
    tally[ASSIGNS] += n
