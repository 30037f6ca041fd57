"""Exact integer counts: Catalan numbers, central binomials, parking functions.

Everything here is integer arithmetic on Python ints; nothing passes through
floating point.
"""

from __future__ import annotations

import threading
from math import comb

from circpark.errors import InvalidInput

BigCount = int

MAX_RECURSION_DEPTH = 1024

_catalan_memo: list[int] = [1]
_memo_lock = threading.Lock()


def _nonneg(n, name="n"):
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise InvalidInput(f"{name} must be a non-negative integer, got {n!r}")


def central_binomial(n: int) -> BigCount:
    """Number of weakly increasing tuples of length n over n + 1 spots, C(2n, n)."""
    _nonneg(n)
    return comb(2 * n, n)


def catalan_closed(n: int) -> BigCount:
    """C(2n, n) / (n + 1), with the division checked to be exact.

    >>> [catalan_closed(n) for n in range(6)]
    [1, 1, 2, 5, 14, 42]
    """
    _nonneg(n)
    q, r = divmod(central_binomial(n), n + 1)
    if r:
        raise ArithmeticError(f"C({2 * n},{n}) is not divisible by {n + 1}")
    return q


def catalan_recursive(n: int, max_depth: int = MAX_RECURSION_DEPTH) -> BigCount:
    """Catalan number from the convolution C_n = sum_{i=1..n} C_{i-1} C_{n-i}.

    Values are memoised; ``n`` beyond ``max_depth`` is refused.
    """
    _nonneg(n)
    if n > max_depth:
        raise InvalidInput(f"n={n} exceeds the recurrence depth cap {max_depth}")
    if n < len(_catalan_memo):
        return _catalan_memo[n]
    with _memo_lock:
        memo = _catalan_memo
        while len(memo) <= n:
            k = len(memo)
            memo.append(sum(memo[i - 1] * memo[k - i] for i in range(1, k + 1)))
        return memo[n]


def pollak_count(n: int) -> BigCount:
    """Number of parking functions of length n, (n + 1)^(n - 1)."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InvalidInput(f"n must be a positive integer, got {n!r}")
    return (n + 1) ** (n - 1)
