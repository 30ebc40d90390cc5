"""Addition-only cube and power procedures.

Each procedure is available two ways: as a plain function backed by a
compiled kernel (``cube_v3(10)``), and as a registered
:class:`~csfkit.core.ProcedureSpec` for checked runs (``REGISTRY["v3"]``).
Both paths execute the same counted step functions.

Plain functions take an optional ``tally`` (see
:func:`csfkit.addonly.new_tally`) to accumulate operation counts into.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from ..addonly import INT64_MAX, ArithmeticOverflow, new_tally
from . import procedures as _code
from .plans import ALL_SPECS, GETBIN, GETMAX, POW, V1, V2, V3, V4, V5

__all__ = [
    "BinaryDigits",
    "cube_v1",
    "cube_v2",
    "cube_v3",
    "cube_v4",
    "cube_v5",
    "get_bin",
    "add_arg1_arg2_times",
    "pow_add_only",
    "get_max",
    "REGISTRY",
    "CUBES",
    "V1",
    "V2",
    "V3",
    "V4",
    "V5",
    "GETBIN",
    "GETMAX",
    "POW",
]

REGISTRY = {spec.name: spec for spec in ALL_SPECS}


@dataclass(frozen=True)
class BinaryDigits:
    """Digits ``bits[0..k]`` of a positive integer, least significant first."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if not self.bits or self.bits[-1] != 1 or any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"not a binary digit sequence with a leading one: {self.bits}")

    @property
    def k(self) -> int:
        return len(self.bits) - 1

    @property
    def value(self) -> int:
        return add_arg1_arg2_times(1, self)

    @classmethod
    def of(cls, n: int) -> "BinaryDigits":
        return get_bin(n)


def _count(n: int, name: str = "N") -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise TypeError(f"{name} must be an integer, got {n!r}")
    n = int(n)
    if n < 0:
        raise ValueError(f"{name} must be non-negative, got {n}")
    if n > INT64_MAX:
        raise ArithmeticOverflow(f"{name} = {n} does not fit in 64 bits")
    return n


def _tally(tally):
    return new_tally() if tally is None else tally


def cube_v1(N: int, tally=None) -> int:
    """N^3 as N additions of N, then N additions of that square."""
    return int(_code.cube_v1_kernel(_tally(tally), _count(N)))


def cube_v2(N: int, tally=None) -> int:
    return int(_code.cube_v2_kernel(_tally(tally), _count(N)))


def cube_v3(N: int, tally=None) -> int:
    """The finite-difference cube: r, c, q, l := r+1, c+q, q+l, l+6."""
    return int(_code.cube_v3_kernel(_tally(tally), _count(N)))


def cube_v4(N: int, tally=None) -> int:
    return int(_code.cube_v4_kernel(_tally(tally), _count(N)))


def cube_v5(N: int, tally=None) -> int:
    """O(log N) cube maintaining c = r^3, s = 2^j r^2, l = 2^2j r over N's digits."""
    return int(_code.cube_v5_kernel(_tally(tally), _count(N)))


CUBES = {"v1": cube_v1, "v2": cube_v2, "v3": cube_v3, "v4": cube_v4, "v5": cube_v5}


def get_bin(N: int, tally=None) -> BinaryDigits:
    """Binary digits of ``N >= 1``."""
    n = _count(N)
    if n == 0:
        raise ValueError("get_bin needs N >= 1: zero has no leading one digit")
    bits, _k = _code.get_bin_kernel(_tally(tally), n)
    return BinaryDigits(tuple(int(b) for b in bits))


def add_arg1_arg2_times(int_to_add: int, num_times: BinaryDigits, tally=None) -> int:
    """``int_to_add`` times the value of ``num_times``, using additions only."""
    x = _count(int_to_add, "int_to_add")
    bits = np.asarray(num_times.bits, dtype=np.int64)
    return int(_code.times_kernel(_tally(tally), x, bits, num_times.k))


def pow_add_only(N: int, M: int, tally=None) -> int:
    """N^M for M >= 1 by M - 1 binary multiply-by-addition steps."""
    n, m = _count(N), _count(M, "M")
    if m < 1:
        raise ValueError("pow_add_only needs M >= 1")
    return int(_code.pow_kernel(_tally(tally), n, m))


def get_max(anArr: Sequence[int], tally=None) -> int:
    """Largest element of a nonempty array."""
    if len(anArr) < 1:
        raise ValueError("get_max needs a nonempty array")
    arr = np.asarray([_int64(v) for v in anArr], dtype=np.int64)
    return int(_code.get_max_kernel(_tally(tally), arr))


def _int64(v) -> int:
    if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
        raise TypeError(f"array entries must be integers, got {v!r}")
    if not -INT64_MAX - 1 <= v <= INT64_MAX:
        raise ArithmeticOverflow(f"{v} does not fit in 64 bits")
    return int(v)
