"""Closed-form critical groups of cones over duplicated graph families.

Each formula first produces the raw list of cyclic moduli exactly as the
direct sum is written, then canonicalizes it. Every division is checked:
an inexact quotient raises :class:`FormulaViolation` instead of being
truncated, because that is itself evidence against the formula.

Parameter names follow the call signatures: for the path, cycle and
complete families ``n`` is the graph size, ``l`` the duplication and
``k`` the cone multiplicity; for the two-block families ``m`` is the
block size, ``l`` the duplication and ``n`` the cone multiplicity.
"""

from __future__ import annotations

from math import gcd

from .exactlin import AbelianGroup, canonicalize
from .polyseq import f


class FormulaViolation(ArithmeticError):
    """A stated quotient is not an integer at these parameters."""

    def __init__(self, formula: str, params: dict, expression: str, numerator: int, denominator: int):
        self.formula = formula
        self.params = dict(params)
        self.expression = expression
        self.numerator = numerator
        self.denominator = denominator
        super().__init__(
            f"{formula}{params}: {expression} = {numerator}/{denominator} is not an integer"
        )


class _Ctx:
    def __init__(self, formula: str, **params):
        self.formula = formula
        self.params = params

    def div(self, num: int, den: int, expression: str) -> int:
        if den == 0 or num % den:
            raise FormulaViolation(self.formula, self.params, expression, num, den)
        return num // den


def _require(cond: bool, message: str):
    if not cond:
        raise ValueError(message)


# ---------------------------------------------------------------------------
# Cones over duplicated paths, cycles and complete graphs


def cone_path_raw(n: int, l: int, k: int) -> list[int]:
    _require(n >= 2 and l >= 1 and k >= 0, f"cone path needs n>=2, l>=1, k>=0; got {n}, {l}, {k}")
    ctx = _Ctx("cone_path", n=n, l=l, k=k)
    r = gcd(l, k)
    last = ctx.div(k * f(n - 1, k + 2 * l, -l), r ** (n - 1), "k*f_{n-1}(k+2l,-l)/r^(n-1)")
    return [r] * (n - 1) + [last]


def cone_cycle_raw(n: int, l: int, k: int) -> list[int]:
    _require(n >= 4 and l >= 1 and k >= 0, f"cone cycle needs n>=4, l>=1, k>=0; got {n}, {l}, {k}")
    ctx = _Ctx("cone_cycle", n=n, l=l, k=k)
    r = gcd(l, k)
    x = k + 2 * l
    q, odd = divmod(n - 2, 2)
    if odd:
        s = ctx.div(f(q + 1, x, -l) + l * f(q, x, -l), r ** (q + 1), "s_q")
        return [r] * (n - 2) + [r * s, k * s]
    t = ctx.div(f(q, x, -l), r ** q, "t_q")
    if (k // r) % 2:
        return [r] * (n - 2) + [r * t, ctx.div(k * (k + 4 * l) * t, r, "k(k+4l)t_q/r")]
    return [r] * (n - 2) + [2 * r * t, ctx.div(k * (k + 4 * l) * t, 2 * r, "k(k+4l)t_q/2r")]


def cone_complete_raw(n: int, l: int, k: int) -> list[int]:
    _require(n >= 2 and l >= 1 and k >= 0, f"cone complete needs n>=2, l>=1, k>=0; got {n}, {l}, {k}")
    ctx = _Ctx("cone_complete", n=n, l=l, k=k)
    r = gcd(l, k)
    return [r] + [k + n * l] * (n - 2) + [ctx.div(k * (k + n * l), r, "k(k+nl)/r")]


def cone_path_group(n: int, l: int, k: int) -> AbelianGroup:
    return canonicalize(cone_path_raw(n, l, k))


def cone_cycle_group(n: int, l: int, k: int) -> AbelianGroup:
    return canonicalize(cone_cycle_raw(n, l, k))


def cone_complete_group(n: int, l: int, k: int) -> AbelianGroup:
    return canonicalize(cone_complete_raw(n, l, k))


# ---------------------------------------------------------------------------
# Cones over duplicated two-block families


def _two_block_args(name: str, m: int, l: int, n: int, min_m: int = 2) -> _Ctx:
    _require(m >= min_m and l >= 1 and n >= 0, f"{name} needs m>={min_m}, l>=1, n>=0; got {m}, {l}, {n}")
    return _Ctx(name, m=m, l=l, n=n)


def kmm_raw(m: int, l: int, n: int) -> list[int]:
    ctx = _two_block_args("kmm", m, l, n)
    r = gcd(l, n)
    s = gcd(m * l, n)
    return (
        [r] * 2
        + [n + m * l] * (2 * (m - 2))
        + [ctx.div((n + m * l) * s, r, "(n+ml)s/r"),
           ctx.div(n * (n + m * l) * (n + 2 * m * l), r * s, "n(n+ml)(n+2ml)/rs")]
    )


def lmm_raw(m: int, l: int, n: int) -> list[int]:
    ctx = _two_block_args("lmm", m, l, n, min_m=3)
    r = gcd(l, n)
    s = n + (m - 1) * l
    t = ctx.div(gcd(m - 1, n), gcd(gcd(l, m - 1), n), "t")
    u = s * s * (n * n + 2 * n * (m - 1) * l + (m - 2) * l * l)
    return (
        [r] * m
        + [ctx.div(s * s - l * l, r, "(s^2-l^2)/r")] * (m - 2)
        + [r * t, ctx.div(u, r ** 3 * t, "u/r^3t")]
    )


def lMM_raw(m: int, l: int, n: int) -> list[int]:
    ctx = _two_block_args("lMM", m, l, n)
    r = gcd(l, n)
    s = n + 2 * (m - 1) * l
    t = n + 2 * m * l
    u = gcd(n, (m - 1) * l)
    v = gcd(n, ctx.div(2 * (m - 1) * l * l, r, "2(m-1)l^2/r"))
    return (
        [r] * (m - 1)
        + [ctx.div(s * t, r, "st/r")] * (m - 2)
        + [u, ctx.div(s * v, u, "sv/u"), ctx.div(n * s * t, r * v, "nst/rv")]
    )


def mMM_raw(m: int, l: int, n: int) -> list[int]:
    ctx = _two_block_args("mMM", m, l, n)
    r = gcd(l, n)
    # t is left undefined in the group statement; the reduction uses n + (m+2)l
    t = n + (m + 2) * l
    v = gcd(m, ctx.div(l, r, "l/r"))
    u = ctx.div(gcd(n * (n + 2 * l), l * v * (n + t)), r, "u")
    return (
        [r] * (m + 1)
        + [ctx.div((n + m * l) * t, r, "(n+ml)(n+(m+2)l)/r")] * (m - 2)
        + [u, ctx.div(n * (n + 2 * l) * (n + m * l) * t, u * r * r, "n(n+2l)(n+ml)(n+(m+2)l)/ur^2")]
    )


def kmM_raw(m: int, l: int, n: int) -> list[int]:
    ctx = _two_block_args("kmM", m, l, n)
    r = gcd(l, n)
    s = gcd(n * n, m * l * r)
    return (
        [m * l + n] * (m - 2)
        + [2 * m * l + n] * (m - 2)
        + [r] * 2
        + [ctx.div(s * (n + 2 * m * l), r * r, "s(n+2ml)/r^2"),
           ctx.div(n * (n + m * l) * (n + 2 * m * l), s, "n(n+ml)(n+2ml)/s")]
    )


def mmM_raw(m: int, l: int, n: int) -> list[int]:
    ctx = _two_block_args("mmM", m, l, n)
    r = gcd(l, n)
    s = n * n + m * l * l + n * l * (m + 2)
    return (
        [r] * (m + 1)
        + [ctx.div(s, r, "s/r")] * (m - 2)
        + [ctx.div(n * (n + 2 * l) * s, r ** 3, "n(n+2l)s/r^3")]
    )


def lmM_raw(m: int, l: int, n: int) -> list[int]:
    ctx = _two_block_args("lmM", m, l, n)
    r = gcd(l, n)
    s = n * n + (3 * m - 2) * n * l + m * (2 * m - 3) * l * l
    t = gcd(n, ctx.div(l ** 3 * (m - 1) * (2 * m - 3), r * r, "l^3(m-1)(2m-3)/r^2"))
    return (
        [r] * m
        + [ctx.div(s, r, "s/r")] * (m - 2)
        + [t, ctx.div(n * (n + 2 * (m - 1) * l) * s, t * r * r, "n(n+2(m-1)l)s/tr^2")]
    )


def kmm_group(m: int, l: int, n: int) -> AbelianGroup:
    return canonicalize(kmm_raw(m, l, n))


def lmm_group(m: int, l: int, n: int) -> AbelianGroup:
    return canonicalize(lmm_raw(m, l, n))


def lMM_group(m: int, l: int, n: int) -> AbelianGroup:
    return canonicalize(lMM_raw(m, l, n))


def mMM_group(m: int, l: int, n: int) -> AbelianGroup:
    return canonicalize(mMM_raw(m, l, n))


def kmM_group(m: int, l: int, n: int) -> AbelianGroup:
    return canonicalize(kmM_raw(m, l, n))


def mmM_group(m: int, l: int, n: int) -> AbelianGroup:
    return canonicalize(mmM_raw(m, l, n))


def lmM_group(m: int, l: int, n: int) -> AbelianGroup:
    return canonicalize(lmM_raw(m, l, n))


# family name -> (raw formula, size parameter name, cone parameter name)
FORMULAS = {
    "path": (cone_path_raw, "n", "k"),
    "cycle": (cone_cycle_raw, "n", "k"),
    "complete": (cone_complete_raw, "n", "k"),
    "Kmm": (kmm_raw, "m", "n"),
    "Lmm": (lmm_raw, "m", "n"),
    "LMM": (lMM_raw, "m", "n"),
    "MMM": (mMM_raw, "m", "n"),
    "KmM": (kmM_raw, "m", "n"),
    "MmM": (mmM_raw, "m", "n"),
    "LmM": (lmM_raw, "m", "n"),
}


def closed_form_raw(family: str, size: int, l: int, cone_k: int) -> list[int]:
    if family not in FORMULAS:
        raise ValueError(f"no closed form for family {family!r}")
    return FORMULAS[family][0](size, l, cone_k)


def closed_form_group(family: str, size: int, l: int, cone_k: int) -> AbelianGroup:
    return canonicalize(closed_form_raw(family, size, l, cone_k))
