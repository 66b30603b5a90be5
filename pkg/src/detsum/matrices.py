"""Square matrices over any supported ring, with exact determinants.

Four determinant routes are available:

* ``leibniz``          -- signed sum over permutations; any ring, small n
* ``minor_expansion``  -- division-free dynamic programming over column
  subsets (O(2^n * n) ring products); any ring, n <= 16
* ``bareiss``          -- fraction-free elimination; needs exact division
  (integers, rationals, prime fields)
* ``auto``             -- Gaussian elimination over prime fields, Bareiss
  over the integers/rationals, Leibniz for n <= 5 over general rings,
  minor expansion for 5 < n <= 16, and componentwise recursion over
  product rings

Invertibility always reduces to the determinant being a unit; no matrix
inverse is ever formed.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import (
    MaskOutOfRange,
    RingMismatch,
    ShapeMismatch,
    SizeLimit,
    UnsupportedAlgorithm,
)
from .rings import PrimeField, ProductRing, Ring, RingElement
from .subsets import SubsetMask

__all__ = [
    "SquareMatrix",
    "subset_sum",
    "det",
    "det_rows",
    "is_invertible",
    "random_matrix",
    "DET_ALGORITHMS",
]

DET_ALGORITHMS = ("auto", "leibniz", "minor_expansion", "bareiss")

EXACT_DIVISION_SIZE_CAP = 64  # integers, rationals, prime fields
GENERAL_SIZE_CAP = 16         # division-free rings (Z/N, products, polynomials)
LEIBNIZ_SIZE_CAP = 10         # n! terms make larger n pointless


class SquareMatrix:
    """An immutable n x n matrix over one ring.

    ``rows`` holds raw ring values (canonical form) as a tuple of row
    tuples; ``entry`` wraps single entries as :class:`RingElement`.
    """

    __slots__ = ("ring", "n", "rows")

    def __init__(self, ring: Ring, rows: Sequence[Sequence[object]]):
        n = len(rows)
        if n < 1:
            raise ShapeMismatch("a square matrix needs at least one row")
        norm = []
        for row in rows:
            if len(row) != n:
                raise ShapeMismatch(f"row of length {len(row)} in a {n}x{n} matrix")
            out = []
            for e in row:
                if isinstance(e, RingElement):
                    if e.ring != ring:
                        raise RingMismatch(f"entry from {e.ring!r} in a matrix over {ring!r}")
                    out.append(e.value)
                else:
                    out.append(ring.normalize(e))
            norm.append(tuple(out))
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", tuple(norm))

    def __setattr__(self, name, value):
        raise AttributeError("SquareMatrix is immutable")

    @classmethod
    def zero(cls, ring: Ring, n: int) -> "SquareMatrix":
        z = ring.zero
        return _raw_matrix(ring, n, tuple((z,) * n for _ in range(n)))

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "SquareMatrix":
        z, o = ring.zero, ring.one
        return _raw_matrix(
            ring, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))
        )

    @classmethod
    def diagonal(cls, ring: Ring, values: Sequence[object]) -> "SquareMatrix":
        n = len(values)
        if n < 1:
            raise ShapeMismatch("a diagonal matrix needs at least one entry")
        vals = [ring.normalize(v.value if isinstance(v, RingElement) else v) for v in values]
        z = ring.zero
        return _raw_matrix(
            ring, n, tuple(tuple(vals[i] if i == j else z for j in range(n)) for i in range(n))
        )

    def entry(self, i: int, j: int) -> RingElement:
        return RingElement(self.ring, self.rows[i][j], _normalized=True)

    def __getitem__(self, ij: tuple[int, int]) -> RingElement:
        i, j = ij
        return self.entry(i, j)

    def __add__(self, other: "SquareMatrix") -> "SquareMatrix":
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")
        if self.n != other.n:
            raise ShapeMismatch(f"{self.n}x{self.n} vs {other.n}x{other.n}")
        add = self.ring.add
        return _raw_matrix(
            self.ring,
            self.n,
            tuple(
                tuple(add(a, b) for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            ),
        )

    def scaled(self, c) -> "SquareMatrix":
        """Entrywise scalar multiple by a ring element (or plain int)."""
        ring = self.ring
        if isinstance(c, RingElement):
            if c.ring != ring:
                raise RingMismatch(f"scalar from {c.ring!r}, matrix over {ring!r}")
            cv = c.value
        elif isinstance(c, int) and not isinstance(c, bool):
            cv = ring.from_int(c)
        else:
            cv = ring.normalize(c)
        mul = ring.mul
        return _raw_matrix(
            ring, self.n, tuple(tuple(mul(cv, e) for e in row) for row in self.rows)
        )

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SquareMatrix)
            and self.ring == other.ring
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.ring, self.rows))

    def __repr__(self) -> str:
        return f"SquareMatrix({self.ring!r}, {[list(r) for r in self.rows]!r})"


def _raw_matrix(ring: Ring, n: int, rows: tuple[tuple[object, ...], ...]) -> SquareMatrix:
    # Internal fast path: entries must already be canonical raw values.
    mat = SquareMatrix.__new__(SquareMatrix)
    object.__setattr__(mat, "ring", ring)
    object.__setattr__(mat, "n", n)
    object.__setattr__(mat, "rows", rows)
    return mat


def family_ring_shape(matrices: Sequence[SquareMatrix]) -> tuple[Ring, int]:
    """Common (ring, n) of a nonempty family; raises on any mismatch."""
    if not matrices:
        raise ShapeMismatch("empty matrix family")
    ring = matrices[0].ring
    n = matrices[0].n
    for a in matrices[1:]:
        if a.ring != ring:
            raise RingMismatch(f"family mixes {ring!r} and {a.ring!r}")
        if a.n != n:
            raise ShapeMismatch(f"family mixes sizes {n} and {a.n}")
    return ring, n


def subset_sum(matrices: Sequence[SquareMatrix], mask: SubsetMask) -> SquareMatrix:
    """Sum of the selected matrices; the empty mask gives the zero matrix."""
    ring, n = family_ring_shape(matrices)
    if mask.m != len(matrices):
        raise MaskOutOfRange(
            f"mask over a family of {mask.m}, got {len(matrices)} matrices"
        )
    add = ring.add
    rows = [[ring.zero] * n for _ in range(n)]
    for idx in mask:
        src = matrices[idx].rows
        for i in range(n):
            row = rows[i]
            srow = src[i]
            for j in range(n):
                row[j] = add(row[j], srow[j])
    return _raw_matrix(ring, n, tuple(tuple(r) for r in rows))


@lru_cache(maxsize=None)
def _signed_permutations(n: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    out = []
    for perm in itertools.permutations(range(n)):
        inversions = sum(
            1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b]
        )
        out.append((perm, -1 if inversions & 1 else 1))
    return tuple(out)


def _det_leibniz(ring: Ring, rows: Sequence[Sequence[object]]) -> object:
    n = len(rows)
    acc = ring.zero
    is_zero, mul = ring.is_zero, ring.mul
    for perm, sign in _signed_permutations(n):
        term = None
        for i in range(n):
            e = rows[i][perm[i]]
            if is_zero(e):
                term = None
                break
            term = e if term is None else mul(term, e)
        if term is None:
            continue
        acc = ring.add(acc, term) if sign > 0 else ring.sub(acc, term)
    return acc


def _det_minor_expansion(ring: Ring, rows: Sequence[Sequence[object]]) -> object:
    # dp[mask] = det of the submatrix on the first popcount(mask) rows and
    # the columns in mask; one row is appended per round.
    n = len(rows)
    dp = {0: ring.one}
    is_zero, mul, add, neg = ring.is_zero, ring.mul, ring.add, ring.neg
    for r in range(n):
        row = rows[r]
        ndp: dict[int, object] = {}
        for mask, v in dp.items():
            pos = 0
            for j in range(n):
                bit = 1 << j
                if mask & bit:
                    pos += 1
                    continue
                e = row[j]
                if is_zero(e):
                    continue
                contrib = mul(v, e)
                if (r + pos) & 1:
                    contrib = neg(contrib)
                key = mask | bit
                cur = ndp.get(key)
                ndp[key] = contrib if cur is None else add(cur, contrib)
        dp = {k: v for k, v in ndp.items() if not is_zero(v)}
        if not dp:
            return ring.zero
    return dp.get((1 << n) - 1, ring.zero)


def _det_bareiss(ring: Ring, rows: Sequence[Sequence[object]]) -> object:
    n = len(rows)
    m = [list(r) for r in rows]
    if n == 1:
        return m[0][0]
    negate = False
    prev = ring.one
    for k in range(n - 1):
        if ring.is_zero(m[k][k]):
            for i in range(k + 1, n):
                if not ring.is_zero(m[i][k]):
                    m[k], m[i] = m[i], m[k]
                    negate = not negate
                    break
            else:
                return ring.zero
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i, row_k = m[i], m[k]
            lead = row_i[k]
            for j in range(k + 1, n):
                t = ring.sub(ring.mul(pivot, row_i[j]), ring.mul(lead, row_k[j]))
                row_i[j] = ring.exact_div(t, prev) if k else t
            row_i[k] = ring.zero
        prev = pivot
    d = m[n - 1][n - 1]
    return ring.neg(d) if negate else d


def _det_elimination(ring: Ring, rows: Sequence[Sequence[object]]) -> object:
    # Plain Gaussian elimination; only for fields.
    n = len(rows)
    m = [list(r) for r in rows]
    d = ring.one
    for k in range(n):
        pivot_row = None
        for i in range(k, n):
            if not ring.is_zero(m[i][k]):
                pivot_row = i
                break
        if pivot_row is None:
            return ring.zero
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
            d = ring.neg(d)
        pivot = m[k][k]
        d = ring.mul(d, pivot)
        inv = ring.try_inverse(pivot)
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            if ring.is_zero(row_i[k]):
                continue
            factor = ring.mul(row_i[k], inv)
            for j in range(k + 1, n):
                row_i[j] = ring.sub(row_i[j], ring.mul(factor, row_k[j]))
            row_i[k] = ring.zero
    return d


def _det_auto(ring: Ring, rows: Sequence[Sequence[object]]) -> object:
    n = len(rows)
    if isinstance(ring, ProductRing):
        parts = []
        for c, comp in enumerate(ring.components):
            comp_rows = [[entry[c] for entry in row] for row in rows]
            parts.append(_det_auto(comp, comp_rows))
        return tuple(parts)
    if isinstance(ring, PrimeField):
        if n > EXACT_DIVISION_SIZE_CAP:
            raise SizeLimit(f"n={n} exceeds the cap {EXACT_DIVISION_SIZE_CAP} over {ring!r}")
        return _det_elimination(ring, rows)
    if ring.has_exact_division:
        if n > EXACT_DIVISION_SIZE_CAP:
            raise SizeLimit(f"n={n} exceeds the cap {EXACT_DIVISION_SIZE_CAP} over {ring!r}")
        return _det_bareiss(ring, rows)
    if n <= 5:
        return _det_leibniz(ring, rows)
    if n <= GENERAL_SIZE_CAP:
        return _det_minor_expansion(ring, rows)
    raise SizeLimit(
        f"division-free determinants are capped at n <= {GENERAL_SIZE_CAP}, got {n}"
    )


def det_rows(ring: Ring, rows: Sequence[Sequence[object]], algorithm: str = "auto") -> object:
    """Determinant on raw rows; the low-level path behind :func:`det`."""
    n = len(rows)
    if algorithm == "auto":
        return _det_auto(ring, rows)
    if algorithm == "leibniz":
        if n > LEIBNIZ_SIZE_CAP:
            raise SizeLimit(f"leibniz is capped at n <= {LEIBNIZ_SIZE_CAP}, got {n}")
        return _det_leibniz(ring, rows)
    if algorithm == "minor_expansion":
        if n > GENERAL_SIZE_CAP:
            raise SizeLimit(f"minor expansion is capped at n <= {GENERAL_SIZE_CAP}, got {n}")
        return _det_minor_expansion(ring, rows)
    if algorithm == "bareiss":
        if not ring.has_exact_division:
            raise UnsupportedAlgorithm(f"bareiss needs exact division; not available over {ring!r}")
        if n > EXACT_DIVISION_SIZE_CAP:
            raise SizeLimit(f"bareiss is capped at n <= {EXACT_DIVISION_SIZE_CAP}, got {n}")
        return _det_bareiss(ring, rows)
    raise ValueError(f"unknown determinant algorithm {algorithm!r}")


def det(matrix: SquareMatrix, algorithm: str = "auto") -> RingElement:
    """Exact determinant of a square matrix."""
    value = det_rows(matrix.ring, matrix.rows, algorithm)
    return RingElement(matrix.ring, value, _normalized=True)


def is_invertible(matrix: SquareMatrix) -> bool:
    """True iff the determinant is a unit of the base ring."""
    return matrix.ring.is_unit(det_rows(matrix.ring, matrix.rows))


def mat_mul(a: SquareMatrix, b: SquareMatrix) -> SquareMatrix:
    """Matrix product; kept for the validation suites (multiplicativity)."""
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring!r} vs {b.ring!r}")
    if a.n != b.n:
        raise ShapeMismatch(f"{a.n}x{a.n} vs {b.n}x{b.n}")
    ring, n = a.ring, a.n
    add, mul = ring.add, ring.mul
    rows = []
    for i in range(n):
        arow = a.rows[i]
        out = []
        for j in range(n):
            acc = ring.zero
            for k in range(n):
                acc = add(acc, mul(arow[k], b.rows[k][j]))
            out.append(acc)
        rows.append(tuple(out))
    return _raw_matrix(ring, n, tuple(rows))


def random_matrix(ring: Ring, n: int, rng: random.Random) -> SquareMatrix:
    """Matrix with small random entries; drives the seeded suites."""
    return _raw_matrix(
        ring, n, tuple(tuple(ring.random(rng) for _ in range(n)) for _ in range(n))
    )
