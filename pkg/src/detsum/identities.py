"""Alternating subset-sum identities, exactly.

The central fact: for matrices A_1..A_m of size n over any commutative
ring, the signed sum over all subsets S of det(sum of the selected
matrices), weighted by (-1)^|S|, vanishes whenever m > n.  This module
evaluates that sum numerically over any supported ring, proves it
symbolically on generic inputs, extracts an explicit rewriting of the
full-family determinant into small-subset determinants, and exposes two
consequences: a perturbation detector and a singular-simplex centroid
check.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    ArityMismatch,
    ContractViolation,
    HypothesisViolation,
    InvalidParameters,
    NotHomogeneous,
    RingMismatch,
    ShapeMismatch,
    SizeLimit,
    TooManyElements,
    TooManyMatrices,
    UnsupportedRing,
)
from .matrices import SquareMatrix, _raw_matrix, det_rows, family_ring_shape
from .rings import RATIONALS, IntPolyRing, RingElement, SparsePoly
from .subsets import MAX_FAMILY, SubsetMask, masks_in_search_order

__all__ = [
    "IdentityReport",
    "SimplexReport",
    "alternating_subset_det_sum",
    "check_alternating_product_identity",
    "monomial_coefficient_check",
    "check_alternating_det_identity",
    "det_expansion_certificate",
    "generic_matrix_family",
    "perturbation_identity_residual",
    "find_perturbing_subset",
    "homogeneous_alternating_sum",
    "simplex_centroid_check",
    "PRODUCT_IDENTITY_SIZE_CAP",
    "DET_IDENTITY_CAPS",
]

PRODUCT_IDENTITY_SIZE_CAP = 36        # m*n cap for the symbolic product identity
DET_IDENTITY_CAPS = (3, 5)            # (max n, max m) for generic-matrix checks
COEFFICIENT_CHECK_FAMILY_CAP = 24     # 2^m superset enumeration cap


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of one identity evaluation.

    ``holds`` is true iff ``residual`` is the zero element of its ring;
    ``term_count`` is the number of subset terms the sum ranges over
    (2^m for full-subset identities).
    """

    identity: str
    parameters: dict
    residual: RingElement
    holds: bool
    term_count: int


@dataclass(frozen=True)
class SimplexReport:
    """Result of the singular-simplex centroid check.

    ``failing_subsets`` lists the nonempty proper subsets whose sum has a
    nonzero determinant; the premise holds iff that list is empty.
    """

    premise_holds: bool
    centroid_singular: bool
    failing_subsets: tuple[SubsetMask, ...]


def _gray_subset_walk(m: int):
    """Yield (toggled_index, added, parity_of_size) along the Gray walk.

    Step k moves from subset gray(k-1) to gray(k); exactly one index is
    toggled per step, so callers can maintain running sums with one
    update each.  Exact ring addition is order-independent, so the total
    matches the cardinality-ordered sum bit for bit.
    """
    prev = 0
    parity = 0
    for k in range(1, 1 << m):
        gray = k ^ (k >> 1)
        toggled = gray ^ prev
        idx = toggled.bit_length() - 1
        added = bool(gray & toggled)
        parity ^= 1
        yield idx, added, parity
        prev = gray


def alternating_subset_det_sum(
    matrices: Sequence[SquareMatrix], algorithm: str = "auto"
) -> RingElement:
    """Signed sum of det(subset sum) over all 2^m subsets.

    The empty subset contributes det(0) = 0 and is counted but never
    evaluated.  The result is exactly zero whenever m > n, over any
    commutative ring.
    """
    ring, n = family_ring_shape(matrices)
    m = len(matrices)
    if m > MAX_FAMILY:
        raise TooManyMatrices(f"family of {m} exceeds the {MAX_FAMILY}-element limit")
    add, sub = ring.add, ring.sub
    rows = [[ring.zero] * n for _ in range(n)]
    acc = ring.zero
    for idx, added, parity in _gray_subset_walk(m):
        src = matrices[idx].rows
        op = add if added else sub
        for i in range(n):
            row = rows[i]
            srow = src[i]
            for j in range(n):
                row[j] = op(row[j], srow[j])
        d = det_rows(ring, rows, algorithm)
        acc = sub(acc, d) if parity else add(acc, d)
    return RingElement(ring, acc, _normalized=True)


def check_alternating_product_identity(
    m: int, n: int, enforce_hypothesis: bool = True
) -> IdentityReport:
    """Symbolic check that sum_S (-1)^|S| prod_j (sum_{i in S} z_ij) = 0.

    The polynomial is built over m*n integer variables, z_ij sitting at
    flat index i*n + j, by walking all 2^m subsets and expanding each
    product of column sums; it must cancel to the zero polynomial
    whenever m > n.  With ``enforce_hypothesis=False`` the sum is built
    for any sizes so the failure of small families can be inspected.

    Runtime grows like 2^m, so inputs near the size cap with n == 1 take
    far longer than the typical sweep sizes.
    """
    if m < 1 or n < 1:
        raise InvalidParameters(f"need m, n >= 1, got m={m}, n={n}")
    if m * n > PRODUCT_IDENTITY_SIZE_CAP:
        raise SizeLimit(f"m*n = {m * n} exceeds the cap {PRODUCT_IDENTITY_SIZE_CAP}")
    if enforce_hypothesis and m <= n:
        raise HypothesisViolation(f"the identity needs m > n, got m={m} <= n={n}")

    terms: dict[tuple[int, ...], int] = {}
    if n == 1:
        counts = [0] * m
        current: set[int] = set()
        for idx, added, parity in _gray_subset_walk(m):
            if added:
                current.add(idx)
            else:
                current.remove(idx)
            sgn = -1 if parity else 1
            for i in current:
                counts[i] += sgn
        for i, c in enumerate(counts):
            if c:
                exps = [0] * m
                exps[i] = 1
                terms[tuple(exps)] = c
    else:
        coeffs: dict[tuple[int, ...], int] = {}
        current = set()
        for idx, added, parity in _gray_subset_walk(m):
            if added:
                current.add(idx)
            else:
                current.remove(idx)
            sgn = -1 if parity else 1
            members = tuple(current)
            for pick in itertools.product(members, repeat=n):
                coeffs[pick] = coeffs.get(pick, 0) + sgn
        for pick, c in coeffs.items():
            if not c:
                continue
            exps = [0] * (m * n)
            for j, i in enumerate(pick):
                exps[i * n + j] = 1
            terms[tuple(exps)] = c

    residual = SparsePoly(m * n, terms)
    return IdentityReport(
        identity="alternating-product",
        parameters={"m": m, "n": n},
        residual=RingElement(IntPolyRing(m * n), residual, _normalized=True),
        holds=residual.is_zero(),
        term_count=1 << m,
    )


def monomial_coefficient_check(m: int, n: int, indices: Sequence[int]) -> int:
    """Coefficient of z_{i_1,1}...z_{i_n,n} in the alternating product sum.

    Computed two independent ways: (a) summing (-1)^|S| over every subset
    containing all the chosen indices, and (b) the binomial closed form
    over the complement size.  Both must agree; the common value (always
    0 when m > n) is returned.  Indices are 0-based.
    """
    if m <= n:
        raise HypothesisViolation(f"needs m > n, got m={m} <= n={n}")
    if len(indices) != n:
        raise ArityMismatch(f"expected {n} indices, got {len(indices)}")
    if any(i < 0 or i >= m for i in indices):
        raise InvalidParameters(f"indices must lie in [0, {m}), got {list(indices)}")
    if m > COEFFICIENT_CHECK_FAMILY_CAP:
        raise SizeLimit(f"m = {m} exceeds the cap {COEFFICIENT_CHECK_FAMILY_CAP}")

    support = set(indices)
    distinct = len(support)
    free = m - distinct

    base_sign = -1 if distinct & 1 else 1
    direct = 0
    for extra in range(1 << free):
        direct += -base_sign if extra.bit_count() & 1 else base_sign

    closed = sum(
        math.comb(free, l) * (-1) ** (l + distinct) for l in range(free + 1)
    )
    if direct != closed:
        raise ContractViolation(
            f"superset enumeration gave {direct}, closed form gave {closed}"
        )
    return direct


def generic_matrix_family(m: int, n: int) -> list[SquareMatrix]:
    """m generic n x n matrices over the m*n^2-variable polynomial ring.

    The (b, g) entry of matrix i is the variable at flat index
    i*n^2 + b*n + g.
    """
    ring = IntPolyRing(m * n * n)
    mats = []
    for i in range(m):
        rows = tuple(
            tuple(ring.variable(i * n * n + b * n + g) for g in range(n))
            for b in range(n)
        )
        mats.append(_raw_matrix(ring, n, rows))
    return mats


def _check_det_identity_caps(m: int, n: int) -> None:
    if m < 1 or n < 1:
        raise InvalidParameters(f"need m, n >= 1, got m={m}, n={n}")
    if m <= n:
        raise HypothesisViolation(f"the identity needs m > n, got m={m} <= n={n}")
    max_n, max_m = DET_IDENTITY_CAPS
    if n > max_n or m > max_m:
        raise SizeLimit(
            f"symbolic determinant checks are capped at n <= {max_n}, m <= {max_m}"
        )


def check_alternating_det_identity(m: int, n: int) -> IdentityReport:
    """Symbolic proof on generic matrices that the alternating det sum is 0.

    Builds m generic n x n matrices with independent integer variables
    and evaluates the full signed subset sum as one polynomial, which
    must cancel identically for m > n.
    """
    _check_det_identity_caps(m, n)
    residual = alternating_subset_det_sum(generic_matrix_family(m, n))
    return IdentityReport(
        identity="alternating-determinant",
        parameters={"m": m, "n": n},
        residual=residual,
        holds=residual.is_zero(),
        term_count=1 << m,
    )


def det_expansion_certificate(m: int, n: int) -> list[tuple[SubsetMask, int]]:
    """Expansion of det(sum of all m matrices) into |S| <= n subset terms.

    Repeatedly rewrites any determinant of more than n generic summands
    through the alternating identity on that subfamily, starting from the
    full family, until only subsets of size at most n remain.  Returns
    (mask, integer coefficient) pairs in (cardinality, mask) order, and
    verifies the expansion symbolically before returning it.
    """
    _check_det_identity_caps(m, n)
    coeffs: dict[int, int] = {(1 << m) - 1: 1}
    while True:
        oversized = [bits for bits in coeffs if bits.bit_count() > n]
        if not oversized:
            break
        bits = max(oversized, key=lambda b: (b.bit_count(), b))
        c = coeffs.pop(bits)
        size = bits.bit_count()
        # Proper nonempty sub-subsets; the rewritten term det(sum over bits)
        # equals sum over them of (-1)^(size - |S| + 1) * det(sum over S).
        sub = (bits - 1) & bits
        while sub:
            sign = -1 if (size - sub.bit_count() + 1) & 1 else 1
            acc = coeffs.get(sub, 0) + c * sign
            if acc:
                coeffs[sub] = acc
            else:
                coeffs.pop(sub, None)
            sub = (sub - 1) & bits

    ordered = sorted(coeffs.items(), key=lambda kv: (kv[0].bit_count(), kv[0]))
    certificate = [(SubsetMask(bits, m), c) for bits, c in ordered]

    _verify_certificate(m, n, certificate)
    return certificate


def _verify_certificate(m: int, n: int, certificate: list[tuple[SubsetMask, int]]) -> None:
    ring = IntPolyRing(m * n * n)
    mats = generic_matrix_family(m, n)
    full_rows = _summed_rows(ring, n, mats, (1 << m) - 1)
    lhs = det_rows(ring, full_rows)
    rhs = ring.zero
    for mask, c in certificate:
        d = det_rows(ring, _summed_rows(ring, n, mats, mask.bits))
        rhs = ring.add(rhs, ring.mul(ring.from_int(c), d))
    if lhs != rhs:
        raise ContractViolation(
            f"certificate for (m={m}, n={n}) failed symbolic verification"
        )


def _summed_rows(ring, n: int, matrices: Sequence[SquareMatrix], bits: int):
    rows = [[ring.zero] * n for _ in range(n)]
    add = ring.add
    while bits:
        low = bits & -bits
        src = matrices[low.bit_length() - 1].rows
        for i in range(n):
            row = rows[i]
            srow = src[i]
            for j in range(n):
                row[j] = add(row[j], srow[j])
        bits ^= low
    return rows


def perturbation_identity_residual(
    family: Sequence[SquareMatrix], perturbation: SquareMatrix
) -> RingElement:
    """Residual of the perturbation identity; always the zero element.

    For n matrices A_1..A_n and any B, all n x n, the signed sum over
    nonempty subsets of det(sum A_i) - det(sum A_i + B) equals det(B);
    the returned residual subtracts det(B) and must vanish identically.
    """
    ring, n = family_ring_shape(list(family) + [perturbation])
    if len(family) != n:
        raise ShapeMismatch(
            f"need exactly n = {n} family matrices for {n}x{n} inputs, got {len(family)}"
        )
    add, sub = ring.add, ring.sub
    b_rows = perturbation.rows
    rows = [[ring.zero] * n for _ in range(n)]
    acc = ring.zero
    for idx, added, parity in _gray_subset_walk(n):
        src = family[idx].rows
        op = add if added else sub
        for i in range(n):
            row = rows[i]
            srow = src[i]
            for j in range(n):
                row[j] = op(row[j], srow[j])
        plain = det_rows(ring, rows)
        shifted = det_rows(
            ring, [[add(rows[i][j], b_rows[i][j]) for j in range(n)] for i in range(n)]
        )
        term = sub(plain, shifted)
        acc = sub(acc, term) if parity else add(acc, term)
    acc = sub(acc, det_rows(ring, b_rows))
    return RingElement(ring, acc, _normalized=True)


def find_perturbing_subset(
    family: Sequence[SquareMatrix], perturbation: SquareMatrix
) -> Optional[SubsetMask]:
    """Smallest nonempty subset whose determinant moves when B is added.

    Smallest in (cardinality, mask value) order.  Guaranteed to exist
    whenever det(B) != 0: if every subset determinant stayed fixed, the
    perturbation identity would force det(B) = 0.  Returns None only
    when no subset changes (possible only for det(B) = 0).
    """
    ring, n = family_ring_shape(list(family) + [perturbation])
    if len(family) != n:
        raise ShapeMismatch(
            f"need exactly n = {n} family matrices for {n}x{n} inputs, got {len(family)}"
        )
    add = ring.add
    b_rows = perturbation.rows
    for bits in masks_in_search_order(n):
        rows = _summed_rows(ring, n, family, bits)
        plain = det_rows(ring, rows)
        shifted = det_rows(
            ring, [[add(rows[i][j], b_rows[i][j]) for j in range(n)] for i in range(n)]
        )
        if plain != shifted:
            return SubsetMask(bits, n)
    return None


def homogeneous_alternating_sum(
    poly: SparsePoly, vectors: Sequence[Sequence[RingElement]]
) -> RingElement:
    """Signed sum of f(subset sums of vectors) over all subsets.

    f must be homogeneous; the sum is exactly zero whenever the family is
    larger than deg f, which generalizes the determinant identity (det of
    an n x n matrix is homogeneous of degree n in its entries).
    """
    degree = poly.homogeneous_degree()
    if degree is None:
        raise NotHomogeneous("polynomial has terms of different total degrees")
    m = len(vectors)
    if m < 1:
        raise ShapeMismatch("empty vector family")
    if m > MAX_FAMILY:
        raise TooManyElements(f"family of {m} exceeds the {MAX_FAMILY}-element limit")
    if poly.var_count == 0:
        raise ArityMismatch("polynomial in zero variables has no evaluation point")

    ring = None
    raw_vectors = []
    for vec in vectors:
        if len(vec) != poly.var_count:
            raise ArityMismatch(
                f"vector of length {len(vec)}, polynomial has {poly.var_count} variables"
            )
        raw = []
        for el in vec:
            if ring is None:
                ring = el.ring
            elif el.ring != ring:
                raise RingMismatch(f"vectors mix {ring!r} and {el.ring!r}")
            raw.append(el.value)
        raw_vectors.append(raw)

    add, sub = ring.add, ring.sub
    current = [ring.zero] * poly.var_count
    acc = poly.eval_raw(ring, current)  # empty subset: f(0)
    for idx, added, parity in _gray_subset_walk(m):
        vec = raw_vectors[idx]
        op = add if added else sub
        for i in range(poly.var_count):
            current[i] = op(current[i], vec[i])
        value = poly.eval_raw(ring, current)
        acc = sub(acc, value) if parity else add(acc, value)
    return RingElement(ring, acc, _normalized=True)


def simplex_centroid_check(points: Sequence[SquareMatrix]) -> SimplexReport:
    """Centroid membership for a simplex on the determinant cone.

    Takes n+1 rational n x n matrices, the vertices of an n-simplex in
    matrix space.  Every barycentric-subdivision vertex other than the
    centroid is a scaled proper subset sum, and scaling does not change
    determinant vanishing, so the premise reduces to: every nonempty
    proper subset sum is singular.  When the premise holds the centroid
    (the scaled full sum) must be singular too.
    """
    ring, n = family_ring_shape(points)
    if ring != RATIONALS:
        raise UnsupportedRing("the centroid check runs over the rationals only")
    if len(points) != n + 1:
        raise ShapeMismatch(f"need n+1 = {n + 1} points for {n}x{n} matrices, got {len(points)}")
    m = n + 1
    full = (1 << m) - 1
    failing = []
    for bits in masks_in_search_order(m):
        if bits == full:
            continue
        d = det_rows(ring, _summed_rows(ring, n, points, bits))
        if not ring.is_zero(d):
            failing.append(SubsetMask(bits, m))
    centroid_singular = ring.is_zero(det_rows(ring, _summed_rows(ring, n, points, full)))
    return SimplexReport(
        premise_holds=not failing,
        centroid_singular=centroid_singular,
        failing_subsets=tuple(failing),
    )
