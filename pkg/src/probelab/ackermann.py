"""Inverse-Ackermann utility backing the amortized cost bounds.

The two-argument function here is the Tarjan-style variant
    A(1, j) = 2^j,  A(i, 1) = A(i-1, 2),  A(i, j) = A(i-1, A(i, j-1)),
and alpha(m, n) = min{ i >= 1 : A(i, floor(m/n) + 1) > log2(n) }.
Values explode immediately, so evaluation is capped: anything that provably
exceeds every comparison threshold collapses to a sentinel.
"""

from __future__ import annotations

from .errors import InvalidArgs

#: Sentinel larger than any log2(n) we ever compare against (n < 2^64).
CAP = 1 << 70
_CAP_ARG = 70  # A(i, j) >= 2^j >= CAP once j reaches this


def ackermann(i: int, j: int, _memo: dict = {}) -> int:
    """A(i, j), capped at CAP; monotone in both arguments so capping is sound."""
    if i < 1 or j < 1:
        raise InvalidArgs("ackermann arguments start at 1")
    if j >= _CAP_ARG:
        return CAP
    key = (i, j)
    cached = _memo.get(key)
    if cached is not None:
        return cached
    if i == 1:
        val = 1 << j
    elif j == 1:
        val = ackermann(i - 1, 2)
    else:
        inner = ackermann(i, j - 1)
        val = CAP if inner >= _CAP_ARG else ackermann(i - 1, inner)
    val = min(val, CAP)
    _memo[key] = val
    return val


def alpha(m: int, n: int) -> int:
    """Inverse Ackermann for m operations over n elements (m >= n >= 1)."""
    if n < 1 or m < n:
        raise InvalidArgs(f"alpha requires m >= n >= 1, got m={m} n={n}")
    j = m // n + 1
    # A(i, j) > log2(n) is equivalent to A(i, j) >= n.bit_length() for integers.
    threshold = n.bit_length()
    i = 1
    while ackermann(i, j) < threshold:
        i += 1
        if i > 64:
            raise RuntimeError("alpha failed to terminate")  # unreachable
    return i


def alpha_diag(n: int) -> int:
    """alpha(n, n), the diagonal used by the forest link-find threshold."""
    return alpha(n, n)
