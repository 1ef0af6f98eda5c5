"""The tridiagonal sequence f_n(x, y) and the power sequence p_m^n(x, y).

``f`` satisfies f_n = x f_{n-1} - y^2 f_{n-2} with f_{-1} = 0, f_0 = 1; it is
the determinant of the tridiagonal matrix with x on the diagonal and y
beside it. ``p`` drives powers in the ring of matrices aI + bJ:
p_m = (x + n y) p_{m-1} + y x^{m-1}, p_0 = 0.
"""

from __future__ import annotations

from math import comb


def f(n: int, x: int, y: int) -> int:
    if n < -1:
        raise ValueError(f"f is defined for n >= -1, got {n}")
    if n == -1:
        return 0
    prev, cur = 0, 1
    y2 = y * y
    for _ in range(n):
        prev, cur = cur, x * cur - y2 * prev
    return cur


def f_sequence(n: int, x: int, y: int) -> list[int]:
    """``[f_0, ..., f_n]`` in one pass."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    out = [1]
    prev, cur = 0, 1
    y2 = y * y
    for _ in range(n):
        prev, cur = cur, x * cur - y2 * prev
        out.append(cur)
    return out


def f_closed(n: int, x: int, y: int) -> int:
    """Binomial-sum form of ``f``."""
    if n < 0:
        raise ValueError(f"f_closed is defined for n >= 0, got {n}")
    return sum(
        (-1) ** i * comb(n - i, i) * x ** (n - 2 * i) * y ** (2 * i)
        for i in range(n // 2 + 1)
    )


def p(m: int, n: int, x: int, y: int) -> int:
    if m < 0:
        raise ValueError(f"p needs m >= 0, got {m}")
    if n < 1:
        raise ValueError(f"p needs ring size n >= 1, got {n}")
    value = 0
    xpow = 1
    for _ in range(m):
        value = (x + n * y) * value + y * xpow
        xpow *= x
    return value


def p_closed(m: int, n: int, x: int, y: int) -> int:
    if m < 0:
        raise ValueError(f"p_closed needs m >= 0, got {m}")
    if n < 1:
        raise ValueError(f"p_closed needs ring size n >= 1, got {n}")
    return sum(n ** (i - 1) * comb(m, i) * x ** (m - i) * y ** i for i in range(1, m + 1))


def f_via_sum(n: int, x: int, y: int) -> int:
    """``f`` through the binomial sum, extended by f_{-1} = 0; a second route for checks."""
    return 0 if n == -1 else f_closed(n, x, y)


# Identity sides. Each returns (lhs, rhs) so a caller can report both;
# ``fn`` swaps in another evaluator of f.


def sum_rule(n: int, x: int, y: int, *, shift: int = 0, fn=f) -> tuple[int, int]:
    """f_n(x+y,-1) - f_n(y,-1) against x * sum_i f_i(x+y,-1) f_{n-i-shift}(y,-1).

    ``shift=0`` is the form as usually printed; ``shift=1`` is the
    variant that holds identically.
    """
    lhs = fn(n, x + y, -1) - fn(n, y, -1)
    rhs = x * sum(fn(i, x + y, -1) * fn(n - i - shift, y, -1) for i in range(n))
    return lhs, rhs


def split_rule(n: int, k: int, x: int, y: int, *, fn=f) -> tuple[int, int]:
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    return fn(n, x, y), fn(k, x, y) * fn(n - k, x, y) - y * y * fn(k - 1, x, y) * fn(n - k - 1, x, y)


def power_rule(n: int, k: int, x: int, y: int, *, weight: str = "x", fn=f) -> tuple[int, int]:
    """x^k f_n against sum_i C(k,i) w^{2i} f_{n+k-2i}, where w is x or y.

    Needs ``n + k - 2k >= -1`` so every index stays in range.
    """
    if n - k < -1:
        raise ValueError(f"power rule needs n - k >= -1, got n={n}, k={k}")
    w = {"x": x, "y": y}[weight]
    lhs = x ** k * fn(n, x, y)
    rhs = sum(comb(k, i) * w ** (2 * i) * fn(n + k - 2 * i, x, y) for i in range(k + 1))
    return lhs, rhs
