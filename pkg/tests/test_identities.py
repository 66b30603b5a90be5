"""Identity engines against hand values and independent oracles."""

import random

import pytest

from detsum import (
    INTEGERS,
    RATIONALS,
    ArityMismatch,
    HypothesisViolation,
    ModRing,
    NotHomogeneous,
    PrimeField,
    ProductRing,
    SizeLimit,
    SparsePoly,
    SquareMatrix,
    SubsetMask,
    UnsupportedRing,
    alternating_subset_det_sum,
    check_alternating_det_identity,
    check_alternating_product_identity,
    det,
    det_expansion_certificate,
    find_perturbing_subset,
    generic_matrix_family,
    homogeneous_alternating_sum,
    monomial_coefficient_check,
    perturbation_identity_residual,
    random_matrix,
    simplex_centroid_check,
    subset_sum,
)

from conftest import int_rows, ref_alternating_det_sum, ref_det, ref_subset_sum

Z10 = ModRing(10)
Z6 = ModRing(6)


# -- alternating subset det sum ---------------------------------------------

def test_alt_sum_telescopes_for_one_by_one():
    a = SquareMatrix(INTEGERS, [[3]])
    b = SquareMatrix(INTEGERS, [[5]])
    assert alternating_subset_det_sum([a, b]).value == 0  # 0 - 3 - 5 + 8


def test_alt_sum_single_matrix_shows_hypothesis_matters():
    a = SquareMatrix(INTEGERS, [[3]])
    assert alternating_subset_det_sum([a]).value == -3


def test_alt_sum_matches_reference_over_z6():
    rng = random.Random(211)
    for _ in range(50):
        fam = [random_matrix(Z6, 2, rng) for _ in range(3)]
        got = alternating_subset_det_sum(fam).value
        assert got == ref_alternating_det_sum([int_rows(a) for a in fam]) % 6 == 0


def test_alt_sum_vanishes_across_rings():
    rng = random.Random(223)
    rings = (
        PrimeField(2),
        PrimeField(7),
        Z6,
        Z10,
        INTEGERS,
        RATIONALS,
        ProductRing([PrimeField(2), PrimeField(3), PrimeField(5)]),
    )
    for ring in rings:
        for n in (1, 2, 3):
            for m in (4, 6):
                fam = [random_matrix(ring, n, rng) for _ in range(m)]
                assert alternating_subset_det_sum(fam).is_zero()


def test_alt_sum_nonzero_below_threshold_over_z():
    rng = random.Random(227)
    hits = 0
    for _ in range(20):
        fam = [random_matrix(INTEGERS, 3, rng) for _ in range(2)]  # m = 2 <= n
        if not alternating_subset_det_sum(fam).is_zero():
            hits += 1
    assert hits > 0  # no vanishing contract below the threshold


# -- symbolic product identity ----------------------------------------------

def test_product_identity_holds():
    for m, n in ((2, 1), (4, 3), (3, 1), (5, 2)):
        report = check_alternating_product_identity(m, n)
        assert report.holds
        assert report.term_count == 1 << m
        assert report.residual.is_zero()


def test_product_identity_fails_without_hypothesis():
    report = check_alternating_product_identity(2, 2, enforce_hypothesis=False)
    assert not report.holds
    # Expansion by hand: (z00+z10)(z01+z11) - z00*z01 - z10*z11
    #                  = z00*z11 + z10*z01, with flat layout z_ij -> 2i+j.
    expected = SparsePoly(4, {(1, 0, 0, 1): 1, (0, 1, 1, 0): 1})
    assert report.residual.value == expected


def test_product_identity_validation():
    with pytest.raises(HypothesisViolation):
        check_alternating_product_identity(3, 3)
    with pytest.raises(HypothesisViolation):
        check_alternating_product_identity(2, 5)
    with pytest.raises(SizeLimit):
        check_alternating_product_identity(37, 1)


# -- coefficient cancellation -----------------------------------------------

def test_monomial_coefficient_examples():
    assert monomial_coefficient_check(3, 1, [1]) == 0
    assert monomial_coefficient_check(4, 2, [0, 0]) == 0  # repeated index
    assert monomial_coefficient_check(5, 3, [0, 1, 2]) == 0


def test_monomial_coefficient_random_choices():
    rng = random.Random(229)
    for _ in range(50):
        n = rng.randint(1, 3)
        m = rng.randint(n + 1, 8)
        indices = [rng.randrange(m) for _ in range(n)]
        assert monomial_coefficient_check(m, n, indices) == 0


def test_monomial_coefficient_validation():
    with pytest.raises(HypothesisViolation):
        monomial_coefficient_check(2, 2, [0, 1])
    with pytest.raises(ArityMismatch):
        monomial_coefficient_check(4, 2, [0])
    with pytest.raises(Exception):
        monomial_coefficient_check(4, 2, [0, 4])


# -- symbolic determinant identity ------------------------------------------

def test_det_identity_holds():
    for m, n in ((2, 1), (3, 2), (4, 3)):
        report = check_alternating_det_identity(m, n)
        assert report.holds, (m, n)


def test_det_identity_validation():
    with pytest.raises(HypothesisViolation):
        check_alternating_det_identity(2, 2)
    with pytest.raises(SizeLimit):
        check_alternating_det_identity(6, 3)
    with pytest.raises(SizeLimit):
        check_alternating_det_identity(5, 4)


# -- expansion certificate ---------------------------------------------------

def test_certificate_two_one():
    cert = det_expansion_certificate(2, 1)
    assert [(tuple(mask), c) for mask, c in cert] == [((0,), 1), ((1,), 1)]


def test_certificate_three_two():
    cert = det_expansion_certificate(3, 2)
    expected = {
        (0,): -1,
        (1,): -1,
        (2,): -1,
        (0, 1): 1,
        (0, 2): 1,
        (1, 2): 1,
    }
    assert {tuple(mask): c for mask, c in cert} == expected


def test_certificate_four_two_needs_two_levels():
    cert = det_expansion_certificate(4, 2)
    got = {tuple(mask): c for mask, c in cert}
    for single in ((0,), (1,), (2,), (3,)):
        assert got[single] == -2
    for i in range(4):
        for j in range(i + 1, 4):
            assert got[(i, j)] == 1
    assert all(len(k) <= 2 for k in got)


def test_certificate_masks_sorted_in_search_order():
    cert = det_expansion_certificate(4, 2)
    keys = [mask.sort_key() for mask, _ in cert]
    assert keys == sorted(keys)


def test_certificate_reproduces_full_determinant_numerically():
    # Independent check: specialize to seeded integer matrices and compare
    # both sides with the plain permutation-expansion determinant.
    rng = random.Random(233)
    for m, n in ((3, 2), (4, 2), (4, 3)):
        cert = det_expansion_certificate(m, n)
        for _ in range(20):
            fam = [
                [[rng.randrange(-5, 6) for _ in range(n)] for _ in range(n)]
                for _ in range(m)
            ]
            lhs = ref_det(ref_subset_sum(fam, range(m)))
            rhs = sum(
                c * ref_det(ref_subset_sum(fam, list(mask))) for mask, c in cert
            )
            assert lhs == rhs


# -- perturbation -------------------------------------------------------------

def test_perturbation_residual_hand_cases():
    a = SquareMatrix(INTEGERS, [[5]])
    b = SquareMatrix(INTEGERS, [[7]])
    assert perturbation_identity_residual([a], b).is_zero()

    zero2 = SquareMatrix.zero(INTEGERS, 2)
    i2 = SquareMatrix.identity(INTEGERS, 2)
    assert perturbation_identity_residual([zero2, zero2], i2).is_zero()


def test_perturbation_residual_seeded():
    rng = random.Random(239)
    for ring in (INTEGERS, Z10):
        for n in (1, 2, 3):
            for _ in range(40):
                fam = [random_matrix(ring, n, rng) for _ in range(n)]
                b = random_matrix(ring, n, rng)
                assert perturbation_identity_residual(fam, b).is_zero()


def test_perturbation_shape_validation():
    i2 = SquareMatrix.identity(INTEGERS, 2)
    from detsum import ShapeMismatch

    with pytest.raises(ShapeMismatch):
        perturbation_identity_residual([i2], i2)  # needs two 2x2 family matrices


def test_find_perturbing_subset_hand_cases():
    zero2 = SquareMatrix.zero(INTEGERS, 2)
    i2 = SquareMatrix.identity(INTEGERS, 2)
    assert find_perturbing_subset([zero2, zero2], i2) == SubsetMask.from_indices(2, [0])
    assert find_perturbing_subset([zero2, zero2], zero2) is None


def test_find_perturbing_subset_matches_brute_force():
    rng = random.Random(241)
    for _ in range(60):
        n = rng.randint(1, 3)
        fam_rows = [
            [[rng.randrange(-4, 5) for _ in range(n)] for _ in range(n)]
            for _ in range(n)
        ]
        b_rows = [[rng.randrange(-4, 5) for _ in range(n)] for _ in range(n)]
        fam = [SquareMatrix(INTEGERS, rows) for rows in fam_rows]
        b = SquareMatrix(INTEGERS, b_rows)
        got = find_perturbing_subset(fam, b)

        brute = None
        for card in range(1, n + 1):
            candidates = [
                bits
                for bits in range(1, 1 << n)
                if bin(bits).count("1") == card
            ]
            for bits in sorted(candidates):
                ids = [i for i in range(n) if bits >> i & 1]
                base = ref_subset_sum(fam_rows, ids)
                moved = [
                    [base[i][j] + b_rows[i][j] for j in range(n)] for i in range(n)
                ]
                if ref_det(base) != ref_det(moved):
                    brute = SubsetMask(bits, n)
                    break
            if brute is not None:
                break
        assert got == brute
        if ref_det(b_rows) != 0:
            assert got is not None


# -- homogeneous alternating sum ----------------------------------------------

def test_homogeneous_sum_linear_case():
    f = SparsePoly(2, {(1, 0): 2, (0, 1): -3})
    vectors = [
        [INTEGERS.element(1), INTEGERS.element(4)],
        [INTEGERS.element(-2), INTEGERS.element(5)],
    ]
    assert homogeneous_alternating_sum(f, vectors).is_zero()


def test_homogeneous_sum_matches_det_engine():
    rng = random.Random(251)
    det_poly = det(generic_matrix_family(1, 2)[0]).value
    mats = [random_matrix(INTEGERS, 2, rng) for _ in range(3)]
    vectors = [
        [INTEGERS.element(v) for row in a.rows for v in row] for a in mats
    ]
    by_poly = homogeneous_alternating_sum(det_poly, vectors)
    by_dets = alternating_subset_det_sum(mats)
    assert by_poly == by_dets
    assert by_poly.is_zero()


def test_homogeneous_sum_quadratic_seeded():
    rng = random.Random(257)
    f = SparsePoly(2, {(2, 0): 1, (1, 1): 1})  # x0^2 + x0*x1
    for _ in range(40):
        vectors = [
            [INTEGERS.element(rng.randrange(-5, 6)) for _ in range(2)]
            for _ in range(3)
        ]
        assert homogeneous_alternating_sum(f, vectors).is_zero()


def test_homogeneous_sum_requires_homogeneous():
    mixed = SparsePoly(2, {(1, 0): 1, (0, 0): 1})
    vectors = [[INTEGERS.element(1), INTEGERS.element(2)]]
    with pytest.raises(NotHomogeneous):
        homogeneous_alternating_sum(mixed, vectors)


def test_homogeneous_sum_no_contract_at_degree():
    # m == deg: the sum may be nonzero; check a known case.
    f = SparsePoly(1, {(2,): 1})  # x^2, degree 2
    vectors = [[INTEGERS.element(1)], [INTEGERS.element(2)]]
    # f(0) - f(1) - f(2) + f(3) = 0 - 1 - 4 + 9 = 4
    assert homogeneous_alternating_sum(f, vectors).value == 4


# -- simplex centroid ----------------------------------------------------------

def test_simplex_zero_row_family():
    rng = random.Random(263)
    points = [
        SquareMatrix(RATIONALS, [[rng.randrange(-4, 5), rng.randrange(-4, 5)], [0, 0]])
        for _ in range(3)
    ]
    report = simplex_centroid_check(points)
    assert report.premise_holds
    assert report.centroid_singular
    assert report.failing_subsets == ()


def test_simplex_identity_family_fails_premise():
    e11 = SquareMatrix.diagonal(RATIONALS, [1, 0])
    e22 = SquareMatrix.diagonal(RATIONALS, [0, 1])
    i2 = SquareMatrix.identity(RATIONALS, 2)
    report = simplex_centroid_check([e11, e22, i2])
    assert not report.premise_holds
    assert SubsetMask.from_indices(3, [2]) in report.failing_subsets
    assert not report.centroid_singular  # det(2*I) = 4


def test_simplex_matches_brute_force():
    rng = random.Random(269)
    for _ in range(40):
        n = rng.randint(1, 3)
        rows_list = [
            [[rng.randrange(-3, 4) for _ in range(n)] for _ in range(n)]
            for _ in range(n + 1)
        ]
        points = [SquareMatrix(RATIONALS, rows) for rows in rows_list]
        report = simplex_centroid_check(points)
        failing = set()
        m = n + 1
        for bits in range(1, (1 << m) - 1):
            ids = [i for i in range(m) if bits >> i & 1]
            if ref_det(ref_subset_sum(rows_list, ids)) != 0:
                failing.add(bits)
        assert {mask.bits for mask in report.failing_subsets} == failing
        assert report.premise_holds == (not failing)
        full = ref_det(ref_subset_sum(rows_list, range(m)))
        assert report.centroid_singular == (full == 0)
        if report.premise_holds:
            assert report.centroid_singular


def test_simplex_requires_rationals():
    pts = [SquareMatrix.identity(INTEGERS, 2)] * 3
    with pytest.raises(UnsupportedRing):
        simplex_centroid_check(pts)


def test_simplex_point_count_validation():
    from detsum import ShapeMismatch

    pts = [SquareMatrix.identity(RATIONALS, 2)] * 4
    with pytest.raises(ShapeMismatch):
        simplex_centroid_check(pts)
