"""Exact integer matrices, Smith normal form and finitely generated abelian groups.

Everything here works on Python ints, so there is no overflow and no
floating point. The module is the oracle layer: the closed-form group
formulas and the claimed equivalent matrices are checked against
:func:`snf`, :func:`minor_gcd`, :func:`det` and :func:`local_valuations`.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

INFINITE = math.inf


class MatrixFormatError(ValueError):
    """A matrix or graph document could not be parsed.

    ``field`` names the first offending field.
    """

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass(frozen=True)
class IntMatrix:
    """Dense rectangular integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"matrix must be at least 1x1, got {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        if not rows or not rows[0]:
            raise ValueError("matrix must be at least 1x1")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), width, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.scalar(1, n)

    @classmethod
    def scalar(cls, value: int, n: int) -> "IntMatrix":
        return cls.diagonal([value] * n)

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "IntMatrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        out = [0] * (n * n)
        for i, v in enumerate(values):
            out[i * n + i] = int(v)
        return cls(n, n, tuple(out))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(key)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def _check_same_shape(self, other: "IntMatrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(x - y for x, y in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-x for x in self.entries))

    def __mul__(self, k: int) -> "IntMatrix":
        if not isinstance(k, int):
            return NotImplemented
        return IntMatrix(self.rows, self.cols, tuple(k * x for x in self.entries))

    __rmul__ = __mul__

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols_of_other = [other.entries[j::other.cols] for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.extend(sum(x * y for x, y in zip(r, c)) for c in cols_of_other)
        return IntMatrix(self.rows, other.cols, tuple(out))

    def __pow__(self, m: int) -> "IntMatrix":
        if not self.is_square or m < 0:
            raise ValueError("matrix power needs a square matrix and m >= 0")
        result = IntMatrix.identity(self.rows)
        for _ in range(m):
            result = result @ self
        return result

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        return IntMatrix(len(rows), len(cols), tuple(self[i, j] for i in rows for j in cols))

    def delete(self, index: int) -> "IntMatrix":
        """Drop row ``index`` and column ``index`` of a square matrix."""
        keep = [i for i in range(self.rows) if i != index]
        return self.submatrix(keep, keep)

    def __str__(self) -> str:
        width = max(len(str(x)) for x in self.entries)
        return "\n".join(" ".join(str(x).rjust(width) for x in self.row(i)) for i in range(self.rows))


def direct_sum(*blocks: IntMatrix | None) -> IntMatrix:
    """Block-diagonal sum; ``None`` entries stand for empty blocks and are skipped."""
    parts = [b for b in blocks if b is not None]
    if not parts:
        raise ValueError("direct sum of nothing")
    rows = sum(b.rows for b in parts)
    cols = sum(b.cols for b in parts)
    out = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in parts:
        for i in range(b.rows):
            out[r0 + i][c0:c0 + b.cols] = b.row(i)
        r0 += b.rows
        c0 += b.cols
    return IntMatrix.from_rows(out)


def block_matrix(blocks: Sequence[Sequence[IntMatrix]]) -> IntMatrix:
    out: list[list[int]] = []
    for brow in blocks:
        height = brow[0].rows
        if any(b.rows != height for b in brow):
            raise ValueError("blocks in one row must share a height")
        for i in range(height):
            out.append([x for b in brow for x in b.row(i)])
    return IntMatrix.from_rows(out)


def scalar_block(value: int, n: int) -> IntMatrix | None:
    """``value * I_n``, or ``None`` when ``n == 0`` (for use in :func:`direct_sum`)."""
    return IntMatrix.scalar(value, n) if n > 0 else None


# ---------------------------------------------------------------------------
# Abelian groups


@dataclass(frozen=True)
class AbelianGroup:
    """Invariant-factor chain d1 | d2 | ... | dk with every di != 1.

    A modulus of 0 is an infinite cyclic factor. Build instances through
    :func:`canonicalize` unless the factors are already canonical.
    """

    factors: tuple[int, ...] = ()

    def __post_init__(self):
        fs = self.factors
        if any(d < 0 or d == 1 for d in fs):
            raise ValueError(f"non-canonical factors {fs}")
        for a, b in zip(fs, fs[1:]):
            if a == 0 and b != 0 or (b % a if a else 0):
                raise ValueError(f"factors {fs} do not form a divisibility chain")

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.factors if d == 0)

    @property
    def torsion(self) -> "AbelianGroup":
        return AbelianGroup(tuple(d for d in self.factors if d))

    @property
    def order(self) -> int | float:
        return group_order(self)

    def __str__(self) -> str:
        if not self.factors:
            return "0"
        return " + ".join("Z" if d == 0 else f"Z{d}" for d in self.factors)

    def as_strings(self) -> list[str]:
        return [str(d) for d in self.factors]


def canonicalize(factors: Iterable[int]) -> AbelianGroup:
    """Invariant-factor form of the direct sum of cyclic groups Z_d.

    Uses pairwise (gcd, lcm) replacement, which never needs a factorization.

    >>> str(canonicalize([4, 6]))
    'Z2 + Z12'
    >>> str(canonicalize([0, 5]))
    'Z5 + Z'
    """
    d = [abs(int(x)) for x in factors]
    k = len(d)
    for i in range(k):
        for j in range(i + 1, k):
            a, b = d[i], d[j]
            g = math.gcd(a, b)
            d[i] = g
            d[j] = 0 if g == 0 else a // g * b
    return AbelianGroup(tuple(x for x in d if x != 1))


def group_order(group: AbelianGroup) -> int | float:
    if any(d == 0 for d in group.factors):
        return INFINITE
    return math.prod(group.factors)


def group_eq(g: AbelianGroup, h: AbelianGroup) -> bool:
    return g.factors == h.factors


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithForm:
    diagonal: tuple[int, ...]
    rows: int
    cols: int

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _chain_repair(diag: list[int]) -> list[int]:
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            a, b = diag[i], diag[j]
            g = math.gcd(a, b)
            diag[i] = g
            diag[j] = 0 if g == 0 else a // g * b
    return diag


def _min_pivot(a: list[list[int]], t: int) -> tuple[int, int] | None:
    best = None
    best_val = 0
    for i in range(t, len(a)):
        row = a[i]
        for j in range(t, len(row)):
            v = abs(row[j])
            if v and (best is None or v < best_val):
                best, best_val = (i, j), v
                if v == 1:
                    return best
    return best


def snf(M: IntMatrix) -> SmithForm:
    """Smith normal form diagonal of ``M`` (length ``min(rows, cols)``).

    Pivot on the smallest nonzero entry, reduce its row and column by
    integer division, repeat until the pivot divides its row and column
    away, then repair the divisibility chain with gcd/lcm swaps.
    """
    a = M.to_rows()
    rows, cols = M.rows, M.cols
    n = min(rows, cols)
    for t in range(n):
        pos = _min_pivot(a, t)
        if pos is None:
            break
        while True:
            i, j = pos
            a[t], a[i] = a[i], a[t]
            if j != t:
                for r in a:
                    r[t], r[j] = r[j], r[t]
            p = a[t][t]
            pivot_row = a[t]
            for i in range(t + 1, rows):
                x = a[i][t]
                if x:
                    q = x // p
                    if q:
                        ri = a[i]
                        for c in range(t, cols):
                            ri[c] -= q * pivot_row[c]
            for j in range(t + 1, cols):
                x = pivot_row[j]
                if x:
                    q = x // p
                    if q:
                        for r in range(t, rows):
                            a[r][j] -= q * a[r][t]
            # any remainder left in the pivot row/column is smaller than |p|
            pos = None
            best = abs(p)
            for i in range(t + 1, rows):
                v = abs(a[i][t])
                if v and v < best:
                    pos, best = (i, t), v
            for j in range(t + 1, cols):
                v = abs(a[t][j])
                if v and v < best:
                    pos, best = (t, j), v
            if pos is None:
                if any(a[i][t] for i in range(t + 1, rows)) or any(a[t][j] for j in range(t + 1, cols)):
                    # entries equal in size to the pivot but not multiples cannot occur
                    raise AssertionError("SNF reduction stalled")
                break
    diag = [abs(a[i][i]) for i in range(n)]
    return SmithForm(tuple(_chain_repair(diag)), rows, cols)


def invariant_factors(M: IntMatrix) -> tuple[int, ...]:
    return snf(M).diagonal


def critical_group(M: IntMatrix) -> AbelianGroup:
    """Cokernel Z^cols / M^t Z^rows as an invariant-factor chain."""
    form = snf(M)
    nonzero = [d for d in form.diagonal if d]
    return canonicalize(nonzero + [0] * (M.cols - len(nonzero)))


# ---------------------------------------------------------------------------
# Determinants, minors, ranks


def _bareiss(a: list[list[int]]) -> tuple[int, int]:
    """Fraction-free elimination in place; returns (rank, signed last pivot)."""
    rows = len(a)
    cols = len(a[0])
    prev = 1
    rank = 0
    sign = 1
    for c in range(cols):
        if rank == rows:
            break
        piv = next((r for r in range(rank, rows) if a[r][c]), None)
        if piv is None:
            continue
        if piv != rank:
            a[rank], a[piv] = a[piv], a[rank]
            sign = -sign
        p = a[rank][c]
        for r in range(rank + 1, rows):
            ar = a[r]
            f = ar[c]
            for k in range(c + 1, cols):
                ar[k] = (p * ar[k] - f * a[rank][k]) // prev
            ar[c] = 0
        prev = p
        rank += 1
    return rank, sign * prev


def det(M: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    if not M.is_square:
        raise ValueError(f"determinant of non-square {M.rows}x{M.cols} matrix")
    rank, last = _bareiss(M.to_rows())
    return last if rank == M.rows else 0


def rank(M: IntMatrix) -> int:
    """Rank over the rationals."""
    return _bareiss(M.to_rows())[0]


MINOR_GCD_LIMIT = 6


def minor_gcd(M: IntMatrix, i: int) -> int:
    """Gcd of all ``i x i`` minors of ``M`` (``minor_gcd(M, 0) == 1``).

    Brute force over all minors, so only matrices whose smaller
    dimension is at most ``MINOR_GCD_LIMIT`` are accepted.
    """
    n = min(M.rows, M.cols)
    if i == 0:
        return 1
    if not 1 <= i <= n:
        raise ValueError(f"minor order {i} outside 1..{n}")
    if n > MINOR_GCD_LIMIT:
        raise ValueError(f"minor_gcd is limited to min dimension <= {MINOR_GCD_LIMIT}")
    g = 0
    for rs in itertools.combinations(range(M.rows), i):
        for cs in itertools.combinations(range(M.cols), i):
            g = math.gcd(g, det(M.submatrix(rs, cs)))
            if g == 1:
                return 1
    return g


def minor_gcd_factors(M: IntMatrix) -> tuple[int, ...]:
    """Invariant factors as ratios of determinantal divisors.

    Once a divisor vanishes every later one does too, and the
    remaining factors are reported as 0.
    """
    n = min(M.rows, M.cols)
    out = []
    prev = 1
    for i in range(1, n + 1):
        cur = minor_gcd(M, i)
        if cur == 0:
            out.extend([0] * (n - i + 1))
            break
        out.append(cur // prev)
        prev = cur
    return tuple(out)


def local_valuations(M: IntMatrix, p: int, precision: int) -> tuple[list[int], int]:
    """p-adic valuations of the invariant factors of ``M``, computed mod ``p**precision``.

    Elimination over Z/p^e with a minimal-valuation pivot; independent
    of :func:`snf`. Returns the valuations that are below ``precision``
    (including zeros for unit factors) and the number of diagonal
    positions whose factor is divisible by ``p**precision`` (this covers
    the zero factors).
    """
    q = p ** precision
    a = [[x % q for x in r] for r in M.to_rows()]
    rows, cols = M.rows, M.cols
    vals: list[int] = []
    for t in range(min(rows, cols)):
        best = None
        best_v = precision
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x:
                    v = 0
                    while x % p == 0:
                        x //= p
                        v += 1
                    if v < best_v:
                        best, best_v = (i, j), v
        if best is None:
            return vals, min(rows, cols) - t
        i, j = best
        a[t], a[i] = a[i], a[t]
        for r in a:
            r[t], r[j] = r[j], r[t]
        pv = p ** best_v
        unit_inv = pow(a[t][t] // pv, -1, q)
        for i in range(t + 1, rows):
            x = a[i][t]
            if x:
                f = (x // pv) * unit_inv % q
                ri = a[i]
                for c in range(t, cols):
                    ri[c] = (ri[c] - f * a[t][c]) % q
        for j in range(t + 1, cols):
            x = a[t][j]
            if x:
                f = (x // pv) * unit_inv % q
                for r in range(t, rows):
                    a[r][j] = (a[r][j] - f * a[r][t]) % q
        vals.append(best_v)
    return vals, 0


# ---------------------------------------------------------------------------
# Matrix documents


def dump_matrix(M: IntMatrix) -> str:
    doc = {"rows": M.rows, "cols": M.cols, "entries": [str(x) for x in M.entries]}
    return json.dumps(doc, indent=None) + "\n"


def _parse_count(doc: dict, field: str) -> int:
    if field not in doc:
        raise MatrixFormatError(field, "missing")
    value = doc[field]
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise MatrixFormatError(field, f"expected a positive integer, got {value!r}")
    try:
        n = int(value)
    except ValueError:
        raise MatrixFormatError(field, f"not an integer: {value!r}") from None
    if n < 1:
        raise MatrixFormatError(field, f"must be >= 1, got {n}")
    return n


def parse_decimal(value, field: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise MatrixFormatError(field, f"expected a decimal string, got {value!r}")
    if isinstance(value, int):
        return value
    text = value.strip()
    if not text or not text.lstrip("+-").isdigit():
        raise MatrixFormatError(field, f"not a decimal integer: {value!r}")
    return int(text)


def load_matrix(text: str) -> IntMatrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError("document", f"invalid JSON ({exc.msg})") from None
    if not isinstance(doc, dict):
        raise MatrixFormatError("document", "expected an object with rows, cols, entries")
    rows = _parse_count(doc, "rows")
    cols = _parse_count(doc, "cols")
    if "entries" not in doc:
        raise MatrixFormatError("entries", "missing")
    raw = doc["entries"]
    if not isinstance(raw, list):
        raise MatrixFormatError("entries", "expected a list of decimal strings")
    if len(raw) != rows * cols:
        raise MatrixFormatError("entries", f"expected {rows * cols} values, got {len(raw)}")
    values = tuple(parse_decimal(v, f"entries[{k}]") for k, v in enumerate(raw))
    return IntMatrix(rows, cols, values)


def read_matrix(path) -> IntMatrix:
    with open(path, encoding="utf-8") as fh:
        return load_matrix(fh.read())


def write_matrix(path, M: IntMatrix) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_matrix(M))
