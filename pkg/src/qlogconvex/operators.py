"""The bilinear L-operators on triangle entries.

For a triangle a(n, k) and 0 <= k <= t/2:

    L_t(a(n,k)) = a(n+1,k) a(n-1,t-k) + a(n-1,k) a(n+1,t-k) - 2 a(n,k) a(n,t-k)

``L_tilde`` agrees with ``L_mod`` off the diagonal and halves it at k = t/2,
so that summing ``L_tilde`` over 0 <= k <= t/2 gives the coefficient of q^t
in f_{n-1} f_{n+1} - f_n^2.
"""
from __future__ import annotations

from .sequences import Triangle


def _check_args(n: int, t: int, k: int) -> None:
    if n < 1:
        raise ValueError(f"L operator needs n >= 1, got n={n}")
    if t < 0 or t > 2 * n:
        raise ValueError(f"L operator needs 0 <= t <= 2n, got n={n}, t={t}")
    if k < 0 or 2 * k > t:
        raise ValueError(f"L operator needs 0 <= k <= t/2, got t={t}, k={k}")


def L_mod(tri: Triangle, n: int, t: int, k: int) -> int:
    _check_args(n, t, k)
    a = tri.value
    return (
        a(n + 1, k) * a(n - 1, t - k)
        + a(n - 1, k) * a(n + 1, t - k)
        - 2 * a(n, k) * a(n, t - k)
    )


def L_tilde(tri: Triangle, n: int, t: int, k: int) -> int:
    _check_args(n, t, k)
    a = tri.value
    if 2 * k == t:
        return a(n + 1, k) * a(n - 1, k) - a(n, k) ** 2
    return (
        a(n + 1, k) * a(n - 1, t - k)
        + a(n - 1, k) * a(n + 1, t - k)
        - 2 * a(n, k) * a(n, t - k)
    )


def L_row(tri: Triangle, n: int, t: int, operator: str = "L") -> list:
    """[L_t(a(n,k))] for k = 0 .. floor(t/2)."""
    op = L_mod if operator == "L" else L_tilde
    return [op(tri, n, t, k) for k in range(t // 2 + 1)]
