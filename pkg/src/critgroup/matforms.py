"""Parametric matrices, the block operator Phi_m, and claimed equivalent forms.

The claimed forms are built literally from the stated formulas and
are never corrected here; deciding whether a claim holds is the
harness's job.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import polyseq
from .exactlin import IntMatrix, block_matrix, direct_sum, scalar_block

KINDS = ("T", "P", "C", "K")


@dataclass(frozen=True)
class ParamMatrixSpec:
    kind: str
    n: int
    a: int
    b: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        lo = 3 if self.kind == "C" else 2
        if self.n < lo:
            raise ValueError(f"{self.kind}_n needs n >= {lo}, got {self.n}")


def build(spec: ParamMatrixSpec) -> IntMatrix:
    n, a, b = spec.n, spec.a, spec.b
    out = [[0] * n for _ in range(n)]
    if spec.kind == "K":
        for i in range(n):
            for j in range(n):
                out[i][j] = a + b if i == j else b
        return IntMatrix.from_rows(out)
    for i in range(n):
        out[i][i] = a
        if i + 1 < n:
            out[i][i + 1] = out[i + 1][i] = b
    if spec.kind == "P":
        out[0][0] = out[n - 1][n - 1] = a + b
    elif spec.kind == "C":
        out[0][n - 1] = out[n - 1][0] = b
    return IntMatrix.from_rows(out)


def _split_gcd(a: int, b: int) -> tuple[int, int, int]:
    r = math.gcd(a, b)
    if r == 0:
        # both zero: every claimed entry carries a factor r or a, so a', b' are irrelevant
        return 0, 0, 0
    return r, a // r, b // r


@dataclass(frozen=True)
class ClaimedForm:
    """A diagonal list plus an optional trailing block, in that order."""

    diagonal: tuple[int, ...]
    block: IntMatrix | None = None

    def matrix(self) -> IntMatrix:
        diag = IntMatrix.diagonal(self.diagonal) if self.diagonal else None
        return direct_sum(diag, self.block)


def claimed_diagonal(spec: ParamMatrixSpec) -> ClaimedForm:
    """Equivalent form of T/P/K/C with r = gcd(a, b), a = r a', b = r b'.

    For coprime (a, b) this is the unscaled diagonal form (r = 1).
    """
    n, a, b = spec.n, spec.a, spec.b
    r, a1, b1 = _split_gcd(a, b)
    if spec.kind == "T":
        return ClaimedForm((r,) * (n - 1) + (r * polyseq.f(n, a1, b1),))
    if spec.kind == "P":
        return ClaimedForm((r,) * (n - 1) + ((a + 2 * b) * polyseq.f(n - 1, a1, b1),))
    if spec.kind == "K":
        return ClaimedForm((r,) + (a,) * (n - 2) + (a1 * (a + n * b),))
    if n < 4:
        raise ValueError(f"the cycle form is stated for n >= 4, got {n}")
    q, odd = divmod(n - 2, 2)
    if not odd:
        c = polyseq.f(q, a1, b1)
        block = IntMatrix.from_rows([[c * a, c * 2 * b], [c * 2 * b, c * a]])
    else:
        c = polyseq.f(q + 1, a1, b1) - b1 * polyseq.f(q, a1, b1)
        block = IntMatrix.from_rows([[c * r, 0], [0, c * (a + 2 * b)]])
    return ClaimedForm((r,) * (n - 2), block)


# ---------------------------------------------------------------------------
# The ring of matrices K_n(a, b) = (a + b) I + b A(K_n) = a I + b J


@dataclass(frozen=True)
class KnElement:
    n: int
    a: int
    b: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"ring size must be >= 1, got {self.n}")

    def matrix(self) -> IntMatrix:
        return build_k(self.n, self.a, self.b)


def build_k(n: int, a: int, b: int) -> IntMatrix:
    """K_n(a, b) for any n >= 1 (``build`` insists on n >= 2)."""
    return IntMatrix(n, n, tuple(a + b if i == j else b for i in range(n) for j in range(n)))


def _same_ring(x: KnElement, y: KnElement):
    if x.n != y.n:
        raise ValueError(f"ring sizes differ: {x.n} vs {y.n}")


def kn_add(x: KnElement, y: KnElement) -> KnElement:
    _same_ring(x, y)
    return KnElement(x.n, x.a + y.a, x.b + y.b)


def kn_scale(alpha: int, x: KnElement) -> KnElement:
    return KnElement(x.n, alpha * x.a, alpha * x.b)


def kn_mul(x: KnElement, y: KnElement) -> KnElement:
    _same_ring(x, y)
    n = x.n
    return KnElement(n, x.a * y.a, x.a * y.b + x.b * y.a + n * x.b * y.b)


def kn_pow(x: KnElement, m: int) -> KnElement:
    if m < 0:
        raise ValueError(f"exponent must be >= 0, got {m}")
    return KnElement(x.n, x.a ** m, polyseq.p(m, x.n, x.a, x.b))


def kn_one(n: int) -> KnElement:
    return KnElement(n, 1, 0)


# ---------------------------------------------------------------------------
# Phi_m and its reduction


def _check_pair(m: int, A: IntMatrix, B: IntMatrix):
    if m < 2:
        raise ValueError(f"Phi_m needs m >= 2, got {m}")
    if not A.is_square or A.shape != B.shape:
        raise ValueError(f"A and B must be square of equal order, got {A.shape} and {B.shape}")


def phi(m: int, A: IntMatrix, B: IntMatrix) -> IntMatrix:
    """Block matrix whose (i, j) block is K_m(A[i, j], B[i, j])."""
    _check_pair(m, A, B)
    n = A.rows
    return block_matrix([[build_k(m, A[i, j], B[i, j]) for j in range(n)] for i in range(n)])


def phi_reduced(m: int, A: IntMatrix, B: IntMatrix) -> IntMatrix:
    """(m - 2) copies of A, then [[A, B], [0, A + m B]]."""
    _check_pair(m, A, B)
    zero = IntMatrix.zeros(A.rows)
    tail = block_matrix([[A, B], [zero, A + m * B]])
    return direct_sum(*([A] * (m - 2)), tail)


# ---------------------------------------------------------------------------
# Two-block families


BIPARTITE_IDS = ("K_mm", "L_mm", "L_MM", "M_MM", "K_mM", "M_mM", "L_mM")
_MIN_M = {"L_mm": 2}


def phi_pair(family_id: str, m: int, a: int, b: int) -> tuple[IntMatrix, IntMatrix]:
    """The (A, B) with family(a, b) = Phi_m(A, B), as used in the reductions."""
    M = IntMatrix.from_rows
    pairs = {
        "K_mm": ([[a, 0], [0, a]], [[0, b], [b, 0]]),
        "L_mm": ([[a, -b], [-b, a]], [[0, b], [b, 0]]),
        "L_MM": ([[a - b, -b], [-b, a - b]], [[b, b], [b, b]]),
        "M_MM": ([[a - b, b], [b, a - b]], [[b, 0], [0, b]]),
        "K_mM": ([[a, 0], [0, 2 * a]], [[0, b], [b, b]]),
        "M_mM": ([[a, b], [b, (m + 1) * a]], [[0, 0], [0, b]]),
        "L_mM": ([[a, -b], [-b, 2 * a]], [[0, b], [b, b]]),
    }
    if family_id not in pairs:
        raise ValueError(f"unknown family id {family_id!r}")
    A, B = pairs[family_id]
    return M(A), M(B)


def definitional_matrix(family_id: str, m: int, a: int, b: int) -> IntMatrix:
    """a D + b A(G) with D = I for the regular families and I_m + cI_m for the mixed ones."""
    from .graphs import cuv

    coupling, ku, kv = family_id[0], family_id[2], family_id[3]
    adj = cuv(ku, kv, coupling, m).adjacency()
    second = {"K_mM": 2, "L_mM": 2, "M_mM": m + 1}.get(family_id, 1)
    D = IntMatrix.diagonal([1] * m + [second] * m)
    return a * D + b * adj


def claimed_form_bipartite(family_id: str, m: int, a: int, b: int) -> tuple[IntMatrix, IntMatrix]:
    """(original, claimed equivalent) for the two-block families.

    ``original`` is Phi_m(A, B) with the (A, B) the reductions act on;
    for the regular families this equals :func:`definitional_matrix`.
    """
    if family_id not in BIPARTITE_IDS:
        raise ValueError(f"unknown family id {family_id!r}")
    if m < _MIN_M.get(family_id, 2):
        raise ValueError(f"{family_id} needs m >= {_MIN_M.get(family_id, 2)}, got {m}")
    A, B = phi_pair(family_id, m, a, b)
    original = phi(m, A, B)
    R = IntMatrix.from_rows
    I = lambda k: scalar_block(1, k)  # noqa: E731
    if family_id == "K_mm":
        claimed = direct_sum(I(2), scalar_block(a, 2 * (m - 2)), a * R([[a, m * b], [m * b, a]]))
    elif family_id == "L_mm":
        claimed = direct_sum(
            I(m),
            scalar_block(a * a - b * b, m - 2),
            R([[a * a, (m - 2) * a * b], [(m - 2) * a * b, a * a - (m - 1) * b * b]]),
        )
    elif family_id == "L_MM":
        claimed = direct_sum(
            I(m - 1),
            scalar_block(a * (a - 2 * b), m - 2),
            R([
                [a * (a - 2 * b), a * b, 0],
                [0, a + 2 * (m - 1) * b, 0],
                [0, (m - 1) * b, a],
            ]),
        )
    elif family_id == "M_MM":
        claimed = direct_sum(
            I(m + 1),
            scalar_block(a * (a - 2 * b), m - 2),
            R([
                [a * (a - 2 * b), -b * b * (2 * a + (m - 2) * b)],
                [0, (a + (m - 1) * b) ** 2 - b * b],
            ]),
        )
    elif family_id == "K_mM":
        claimed = direct_sum(
            I(2),
            scalar_block(a, m - 2),
            scalar_block(2 * a, m - 2),
            a * R([[2 * a, -(a - m * b) * b], [2 * m, 2 * a]]),
        )
    elif family_id == "M_mM":
        s = (m + 1) * a * a - b * b
        claimed = direct_sum(
            I(m),
            scalar_block(s, m - 2),
            R([[s, b], [0, (a + b) * (b - (m + 1) * a)]]),
        )
    else:  # L_mM
        claimed = direct_sum(
            I(m - 1),
            scalar_block(2 * a * a - b * b, m - 2),
            R([
                [2 * a * a - b * b, 0, a * b + m * b * b],
                [0, a, (m - 1) * b],
                [0, (m - 1) * b, 2 * a + m * b],
            ]),
        )
    return original, claimed
