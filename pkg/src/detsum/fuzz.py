"""Seeded randomized property suites.

Every suite draws from a ``random.Random`` seeded with the master seed
and its own name, so a run is fully determined by the seed.  Suites
return pass/fail counts instead of raising, which lets the CLI bundle
them into one report; the test suite runs the same engines at the full
trial counts.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .identities import (
    alternating_subset_det_sum,
    find_perturbing_subset,
    homogeneous_alternating_sum,
    perturbation_identity_residual,
    simplex_centroid_check,
)
from .matrices import (
    SquareMatrix,
    det,
    det_rows,
    is_invertible,
    mat_mul,
    random_matrix,
    subset_sum,
)
from .rings import (
    INTEGERS,
    RATIONALS,
    IntPolyRing,
    ModRing,
    PrimeField,
    ProductRing,
    Ring,
    RingElement,
    random_homogeneous_poly,
    random_poly,
)
from .search import (
    SemilocalInstance,
    embed_product_to_matrices,
    find_invertible_subsum,
    ideal_chain,
    local_counterexample_matrices,
    semilocal_find_unit_subsum,
)
from .subsets import SubsetMask, masks_in_search_order

__all__ = ["SuiteResult", "SUITES", "run_suite", "run_suites", "DEFAULT_TRIALS"]


@dataclass
class SuiteResult:
    name: str
    checks: int
    failures: int
    first_failure: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0


class _Recorder:
    __slots__ = ("checks", "failures", "first_failure")

    def __init__(self):
        self.checks = 0
        self.failures = 0
        self.first_failure = None

    def check(self, ok: bool, describe) -> None:
        self.checks += 1
        if not ok:
            self.failures += 1
            if self.first_failure is None:
                self.first_failure = describe() if callable(describe) else str(describe)


def _f2x3x5() -> ProductRing:
    return ProductRing([PrimeField(2), PrimeField(3), PrimeField(5)])


_AXIOM_RANDOM_RINGS: Sequence[Ring] = (
    PrimeField(7),
    ModRing(10),
    INTEGERS,
    RATIONALS,
    _f2x3x5(),
    IntPolyRing(2),
)

_DIVIDES = lambda d, x: x == 0 if d == 0 else x % d == 0


def _check_axiom_triple(ring: Ring, a, b, c, rec: _Recorder) -> None:
    add, mul = ring.add, ring.mul
    ok = (
        add(a, b) == add(b, a)
        and add(add(a, b), c) == add(a, add(b, c))
        and mul(a, b) == mul(b, a)
        and mul(mul(a, b), c) == mul(a, mul(b, c))
        and mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
        and add(a, ring.zero) == a
        and mul(a, ring.one) == a
        and ring.is_zero(add(a, ring.neg(a)))
    )
    rec.check(ok, lambda: f"ring axiom failed over {ring!r} on {a!r}, {b!r}, {c!r}")


def suite_ring_axioms(rng: random.Random, trials: int, rec: _Recorder) -> None:
    """Exhaustive triples over Z/6 and F2 x F3; random triples elsewhere."""
    z6 = ModRing(6)
    for a, b, c in itertools.product(range(6), repeat=3):
        _check_axiom_triple(z6, a, b, c, rec)
    f2x3 = ProductRing([PrimeField(2), PrimeField(3)])
    elems = list(itertools.product(range(2), range(3)))
    for a, b, c in itertools.product(elems, repeat=3):
        _check_axiom_triple(f2x3, a, b, c, rec)
    for ring in _AXIOM_RANDOM_RINGS:
        for _ in range(trials):
            _check_axiom_triple(ring, ring.random(rng), ring.random(rng), ring.random(rng), rec)


def suite_unit_product(rng: random.Random, trials: int, rec: _Recorder) -> None:
    for ring in _AXIOM_RANDOM_RINGS + (ModRing(6),):
        for _ in range(trials):
            a, b = ring.random(rng), ring.random(rng)
            ok = ring.is_unit(ring.mul(a, b)) == (ring.is_unit(a) and ring.is_unit(b))
            rec.check(ok, lambda: f"unit multiplicativity failed over {ring!r} on {a!r}, {b!r}")


def suite_inverse_roundtrip(rng: random.Random, trials: int, rec: _Recorder) -> None:
    for ring in _AXIOM_RANDOM_RINGS + (ModRing(6),):
        for _ in range(trials):
            a = ring.random(rng)
            inv = ring.try_inverse(a)
            if inv is None:
                rec.check(not ring.is_unit(a), lambda: f"unit {a!r} has no inverse over {ring!r}")
            else:
                ok = ring.is_unit(a) and ring.mul(a, inv) == ring.one
                rec.check(ok, lambda: f"bad inverse {inv!r} of {a!r} over {ring!r}")


def suite_poly_eval_homomorphism(rng: random.Random, trials: int, rec: _Recorder) -> None:
    rings = (ModRing(6), PrimeField(7), INTEGERS, RATIONALS, _f2x3x5())
    for _ in range(trials):
        ring = rings[rng.randrange(len(rings))]
        f = random_poly(3, rng)
        g = random_poly(3, rng)
        pt = [ring.random(rng) for _ in range(3)]
        fv = f.eval_raw(ring, pt)
        gv = g.eval_raw(ring, pt)
        ok = (
            (f + g).eval_raw(ring, pt) == ring.add(fv, gv)
            and (f * g).eval_raw(ring, pt) == ring.mul(fv, gv)
        )
        rec.check(ok, lambda: f"evaluation not a homomorphism over {ring!r}: f={f!r}, g={g!r}")


def _plain_int_eval(poly, point: Sequence[int]) -> int:
    total = 0
    for exps, coeff in poly.terms.items():
        term = coeff
        for x, e in zip(point, exps):
            term *= x**e
        total += term
    return total


def suite_poly_dense_agreement(rng: random.Random, trials: int, rec: _Recorder) -> None:
    """Sparse products agree with direct integer evaluation at 20 points."""
    for _ in range(trials):
        nvars = rng.randint(1, 4)
        f = random_poly(nvars, rng)
        g = random_poly(nvars, rng)
        prod = f * g
        for _ in range(20):
            pt = [rng.randrange(-6, 7) for _ in range(nvars)]
            expected = _plain_int_eval(f, pt) * _plain_int_eval(g, pt)
            ok = prod.eval_raw(INTEGERS, pt) == expected
            rec.check(ok, lambda: f"sparse/dense mismatch for f={f!r}, g={g!r} at {pt}")


_CROSS_CHECK_RINGS: Sequence[tuple[Ring, tuple[str, ...], int]] = (
    (INTEGERS, ("leibniz", "minor_expansion", "bareiss", "auto"), 6),
    (RATIONALS, ("leibniz", "minor_expansion", "bareiss", "auto"), 6),
    (PrimeField(7), ("leibniz", "minor_expansion", "bareiss", "auto"), 6),
    (ModRing(6), ("leibniz", "minor_expansion", "auto"), 6),
    (ModRing(10), ("leibniz", "minor_expansion", "auto"), 6),
    (_f2x3x5(), ("leibniz", "minor_expansion", "auto"), 6),
    (IntPolyRing(3), ("leibniz", "minor_expansion", "auto"), 3),
)


def suite_det_agreement(rng: random.Random, trials: int, rec: _Recorder) -> None:
    """All applicable determinant algorithms agree, n cycling up to the cap."""
    for ring, algorithms, max_n in _CROSS_CHECK_RINGS:
        for t in range(trials):
            n = t % max_n + 1
            mat = random_matrix(ring, n, rng)
            values = [det(mat, alg).value for alg in algorithms]
            ok = all(v == values[0] for v in values)
            rec.check(
                ok,
                lambda: f"algorithms disagree over {ring!r} (n={n}): "
                + ", ".join(f"{a}={v!r}" for a, v in zip(algorithms, values)),
            )


def suite_det_multiplicativity(rng: random.Random, trials: int, rec: _Recorder) -> None:
    for ring in (PrimeField(7), ModRing(6)):
        for t in range(trials):
            n = t % 4 + 1
            a = random_matrix(ring, n, rng)
            b = random_matrix(ring, n, rng)
            ok = det(mat_mul(a, b)).value == ring.mul(det(a).value, det(b).value)
            rec.check(ok, lambda: f"det not multiplicative over {ring!r} (n={n})")


def suite_det_homogeneity(rng: random.Random, trials: int, rec: _Recorder) -> None:
    """det(c*A) = c^n * det(A)."""
    for ring in (PrimeField(7), ModRing(6), INTEGERS):
        for t in range(trials):
            n = t % 4 + 1
            a = random_matrix(ring, n, rng)
            c = ring.random(rng)
            lhs = det(a.scaled(RingElement(ring, c, _normalized=True))).value
            cn = ring.one
            for _ in range(n):
                cn = ring.mul(cn, c)
            ok = lhs == ring.mul(cn, det(a).value)
            rec.check(ok, lambda: f"det homogeneity failed over {ring!r} (n={n}, c={c!r})")


def suite_det_product_split(rng: random.Random, trials: int, rec: _Recorder) -> None:
    ring = _f2x3x5()
    for t in range(trials):
        n = t % 4 + 1
        mat = random_matrix(ring, n, rng)
        whole = det(mat).value
        parts = []
        for c, comp in enumerate(ring.components):
            comp_rows = [[entry[c] for entry in row] for row in mat.rows]
            parts.append(det_rows(comp, comp_rows))
        rec.check(
            whole == tuple(parts),
            lambda: f"product det {whole!r} != componentwise {tuple(parts)!r} (n={n})",
        )


ALT_SUM_RINGS: Sequence[Ring] = (
    PrimeField(2),
    PrimeField(7),
    ModRing(6),
    ModRing(10),
    INTEGERS,
    RATIONALS,
    _f2x3x5(),
)


def suite_alt_sum_zero(rng: random.Random, trials: int, rec: _Recorder) -> None:
    """The alternating subset det sum vanishes for every n <= 3 < m <= 6."""
    for ring in ALT_SUM_RINGS:
        for n in (1, 2, 3):
            for m in (4, 5, 6):
                for _ in range(trials):
                    fam = [random_matrix(ring, n, rng) for _ in range(m)]
                    value = alternating_subset_det_sum(fam)
                    rec.check(
                        value.is_zero(),
                        lambda: f"nonzero alternating sum over {ring!r} (n={n}, m={m}): {value!r}",
                    )


def suite_perturbation_residual(rng: random.Random, trials: int, rec: _Recorder) -> None:
    for ring in (INTEGERS, ModRing(10)):
        for t in range(trials):
            n = t % 3 + 1
            fam = [random_matrix(ring, n, rng) for _ in range(n)]
            b = random_matrix(ring, n, rng)
            res = perturbation_identity_residual(fam, b)
            rec.check(res.is_zero(), lambda: f"nonzero perturbation residual over {ring!r} (n={n})")


def suite_perturbation_witness(rng: random.Random, trials: int, rec: _Recorder) -> None:
    """The returned subset is the brute-force minimal moving subset."""
    ring = INTEGERS
    for t in range(trials):
        n = t % 3 + 1
        fam = [random_matrix(ring, n, rng) for _ in range(n)]
        b = random_matrix(ring, n, rng)
        witness = find_perturbing_subset(fam, b)
        brute = None
        for bits in masks_in_search_order(n):
            mask = SubsetMask(bits, n)
            base = subset_sum(fam, mask)
            if det(base) != det(base + b):
                brute = mask
                break
        ok = witness == brute and (witness is not None or det(b).is_zero())
        rec.check(ok, lambda: f"witness {witness!r} != brute force {brute!r} (n={n})")


def suite_homogeneous_sum(rng: random.Random, trials: int, rec: _Recorder) -> None:
    for t in range(trials):
        ring = INTEGERS if t % 2 == 0 else ModRing(6)
        nvars = rng.randint(1, 4)
        degree = rng.randint(0, 3)
        f = random_homogeneous_poly(nvars, degree, rng)
        for m in (degree + 1, degree + 2):
            vectors = [
                [RingElement(ring, ring.random(rng), _normalized=True) for _ in range(nvars)]
                for _ in range(m)
            ]
            value = homogeneous_alternating_sum(f, vectors)
            rec.check(
                value.is_zero(),
                lambda: f"nonzero homogeneous sum (deg={degree}, m={m}, ring={ring!r})",
            )


def _singular_rational_points(rng: random.Random, n: int, count: int) -> list[SquareMatrix]:
    """Points whose every subset sum is singular by construction."""
    if n == 1 or rng.random() < 0.5:
        # Common zero row.
        dead = rng.randrange(n)
        mats = []
        for _ in range(count):
            rows = [
                [0 if i == dead else rng.randrange(-4, 5) for _ in range(n)]
                for i in range(n)
            ]
            mats.append(SquareMatrix(RATIONALS, rows))
        return mats
    # Rank-one points sharing the right factor: sums stay rank <= 1 < n.
    right = [rng.randrange(-3, 4) for _ in range(n)]
    mats = []
    for _ in range(count):
        left = [rng.randrange(-3, 4) for _ in range(n)]
        mats.append(SquareMatrix(RATIONALS, [[l * r for r in right] for l in left]))
    return mats


def suite_simplex(rng: random.Random, trials: int, rec: _Recorder) -> None:
    """Reports match brute force; constructed singular families never break
    the premise => centroid implication."""
    for t in range(trials):
        n = t % 3 + 1
        points = [random_matrix(RATIONALS, n, rng) for _ in range(n + 1)]
        report = simplex_centroid_check(points)
        brute_failing = []
        full = (1 << (n + 1)) - 1
        for bits in masks_in_search_order(n + 1):
            if bits == full:
                continue
            mask = SubsetMask(bits, n + 1)
            if not det(subset_sum(points, mask)).is_zero():
                brute_failing.append(mask)
        ok = (
            list(report.failing_subsets) == brute_failing
            and report.premise_holds == (not brute_failing)
            and report.centroid_singular
            == det(subset_sum(points, SubsetMask.full(n + 1))).is_zero()
            and (not report.premise_holds or report.centroid_singular)
        )
        rec.check(ok, lambda: f"simplex report mismatch (n={n})")

        singular = _singular_rational_points(rng, n, n + 1)
        constructed = simplex_centroid_check(singular)
        rec.check(
            constructed.premise_holds and constructed.centroid_singular,
            lambda: f"constructed singular family broke the centroid contract (n={n})",
        )


def _random_family_with_unit_total(ring, n, m, rng, max_resamples=200):
    for _ in range(max_resamples):
        fam = [random_matrix(ring, n, rng) for _ in range(m)]
        total_rows = [
            [
                _sum_entries(ring, fam, i, j)
                for j in range(n)
            ]
            for i in range(n)
        ]
        if ring.is_unit(det_rows(ring, total_rows)):
            return fam
    return None


def _sum_entries(ring, fam, i, j):
    acc = ring.zero
    for mat in fam:
        acc = ring.add(acc, mat.rows[i][j])
    return acc


def suite_search_field_guarantee(rng: random.Random, trials: int, rec: _Recorder) -> None:
    """Invertible total over a field => a subset of size <= n works."""
    for p in (2, 5, 101):
        ring = PrimeField(p)
        for t in range(trials):
            n = t % 4 + 1
            m = rng.randint(n + 1, 8)
            fam = _random_family_with_unit_total(ring, n, m, rng)
            if fam is None:
                continue
            witness = find_invertible_subsum(fam, bound=n)
            ok = witness is not None and is_invertible(subset_sum(fam, witness))
            rec.check(ok, lambda: f"field guarantee failed over F_{p} (n={n}, m={m})")


def suite_search_minimality(rng: random.Random, trials: int, rec: _Recorder) -> None:
    ring = PrimeField(5)
    for t in range(trials):
        n = t % 3 + 1
        m = rng.randint(2, 10)
        fam = [random_matrix(ring, n, rng) for _ in range(m)]
        witness = find_invertible_subsum(fam, bound=m)
        brute = None
        for bits in masks_in_search_order(m):
            if is_invertible(subset_sum(fam, SubsetMask(bits, m))):
                brute = SubsetMask(bits, m)
                break
        rec.check(witness == brute, lambda: f"witness {witness!r} != brute force {brute!r}")


def suite_search_local_guarantee(rng: random.Random, trials: int, rec: _Recorder) -> None:
    """Same guarantee over the local rings Z/4, Z/9, Z/25."""
    for modulus in (4, 9, 25):
        ring = ModRing(modulus)
        for t in range(trials):
            n = t % 3 + 1
            m = rng.randint(n + 1, 7)
            fam = _random_family_with_unit_total(ring, n, m, rng)
            if fam is None:
                continue
            witness = find_invertible_subsum(fam, bound=n)
            ok = witness is not None and is_invertible(subset_sum(fam, witness))
            rec.check(ok, lambda: f"local guarantee failed over Z/{modulus} (n={n}, m={m})")


def suite_search_nonlocal_counterexample(rng: random.Random, trials: int, rec: _Recorder) -> None:
    """The Z/6 construction always defeats the bound-n search."""
    for n in (1, 2, 3):
        fam = local_counterexample_matrices(6, 3, 4, n)
        total = subset_sum(fam, SubsetMask.full(n + 1))
        ok = (
            find_invertible_subsum(fam, bound=n) is None
            and total == SquareMatrix.identity(ModRing(6), n)
        )
        rec.check(ok, lambda: f"counterexample family failed for n={n}")


def suite_ideal_chain(rng: random.Random, trials: int, rec: _Recorder) -> None:
    for ring in (INTEGERS, ModRing(12)):
        for t in range(trials):
            n = t % 3 + 1
            m = rng.randint(n, 6)
            fam = [random_matrix(ring, n, rng) for _ in range(m)]
            chain = ideal_chain(fam)
            gens = chain.generators
            full_det = det(subset_sum(fam, SubsetMask.full(m))).value
            ok = all(_DIVIDES(gens[j + 1], gens[j]) for j in range(m))
            if m >= n:
                ok = ok and all(g == gens[n] for g in gens[n:])
                ok = ok and _DIVIDES(gens[min(n, m)], int(full_det))
            rec.check(ok, lambda: f"ideal chain contract failed over {ring!r}: {gens}")


def suite_semilocal_guarantee(rng: random.Random, trials: int, rec: _Recorder) -> None:
    """Unit total over (F_p)^n => a subset of size <= n sums to a unit."""
    for p in (2, 3, 5):
        field = PrimeField(p)
        for t in range(trials):
            n = t % 4 + 1
            ring = ProductRing([field] * n)
            m = rng.randint(n + 1, 8)
            elems = None
            for _ in range(200):
                candidate = [ring.random(rng) for _ in range(m)]
                total = ring.zero
                for v in candidate:
                    total = ring.add(total, v)
                if ring.is_unit(total):
                    elems = candidate
                    break
            if elems is None:
                continue
            inst = SemilocalInstance.from_raw(ring, elems)
            witness = semilocal_find_unit_subsum(inst, bound=n)
            ok = witness is not None
            if ok:
                total = ring.zero
                for i in witness:
                    total = ring.add(total, elems[i])
                ok = ring.is_unit(total)
            rec.check(ok, lambda: f"semilocal guarantee failed over (F_{p})^{n}, m={m}")


def suite_embedding_soundness(rng: random.Random, trials: int, rec: _Recorder) -> None:
    """Units map to invertible diagonal matrices, subset sums included."""
    for t in range(trials):
        p = (2, 3, 5)[t % 3]
        n = t % 3 + 2
        ring = ProductRing([PrimeField(p)] * n)
        m = rng.randint(2, 6)
        inst = SemilocalInstance.from_raw(ring, [ring.random(rng) for _ in range(m)])
        mats = embed_product_to_matrices(inst)
        ok = all(
            ring.is_unit(el.value) == is_invertible(mat)
            for el, mat in zip(inst.elements, mats)
        )
        for _ in range(5):
            bits = rng.randrange(1, 1 << m)
            mask = SubsetMask(bits, m)
            total = ring.zero
            for i in mask:
                total = ring.add(total, inst.elements[i].value)
            ok = ok and ring.is_unit(total) == is_invertible(subset_sum(mats, mask))
        rec.check(ok, lambda: f"embedding broke unit detection (p={p}, n={n})")


def suite_two_component_bound(rng: random.Random, trials: int, rec: _Recorder) -> None:
    """Over any product of two prime fields, a unit total always yields a
    unit subsum of size <= 2 (exhaustive over all multisets, m <= 5)."""
    for rings in (
        ProductRing([PrimeField(2), PrimeField(3)]),
        ProductRing([PrimeField(2), PrimeField(2)]),
    ):
        elements = list(
            itertools.product(*(range(f.p) for f in rings.components))
        )
        for m in range(1, 6):
            for combo in itertools.combinations_with_replacement(elements, m):
                total = rings.zero
                for v in combo:
                    total = rings.add(total, v)
                if not rings.is_unit(total):
                    continue
                inst = SemilocalInstance.from_raw(rings, combo)
                witness = semilocal_find_unit_subsum(inst, bound=min(2, m))
                rec.check(
                    witness is not None,
                    lambda: f"two-component bound failed on {combo!r} over {rings!r}",
                )


SUITES: dict[str, tuple[Callable, int]] = {
    "ring-axioms": (suite_ring_axioms, 1000),
    "unit-product": (suite_unit_product, 200),
    "inverse-roundtrip": (suite_inverse_roundtrip, 200),
    "poly-eval-homomorphism": (suite_poly_eval_homomorphism, 100),
    "poly-dense-agreement": (suite_poly_dense_agreement, 25),
    "det-agreement": (suite_det_agreement, 60),
    "det-multiplicativity": (suite_det_multiplicativity, 100),
    "det-homogeneity": (suite_det_homogeneity, 100),
    "det-product-split": (suite_det_product_split, 50),
    "alt-sum-zero": (suite_alt_sum_zero, 10),
    "perturbation-residual": (suite_perturbation_residual, 100),
    "perturbation-witness": (suite_perturbation_witness, 50),
    "homogeneous-sum": (suite_homogeneous_sum, 50),
    "simplex": (suite_simplex, 50),
    "search-field-guarantee": (suite_search_field_guarantee, 50),
    "search-minimality": (suite_search_minimality, 50),
    "search-local-guarantee": (suite_search_local_guarantee, 50),
    "search-nonlocal-counterexample": (suite_search_nonlocal_counterexample, 1),
    "ideal-chain": (suite_ideal_chain, 50),
    "semilocal-guarantee": (suite_semilocal_guarantee, 50),
    "embedding-soundness": (suite_embedding_soundness, 50),
    "two-component-bound": (suite_two_component_bound, 1),
}


def run_suite(name: str, seed: int = 0, trials: int | None = None) -> SuiteResult:
    """Run one named suite; ``trials`` overrides its default count."""
    fn, default_trials = SUITES[name]
    rng = random.Random(f"{seed}:{name}")
    rec = _Recorder()
    fn(rng, trials if trials is not None else default_trials, rec)
    return SuiteResult(name, rec.checks, rec.failures, rec.first_failure)


def run_suites(
    names: Sequence[str] | None = None,
    seed: int = 0,
    trials: int | None = None,
) -> list[SuiteResult]:
    """Run the named suites (all of them by default) under one seed."""
    selected = list(SUITES) if names is None else list(names)
    unknown = [n for n in selected if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suites: {', '.join(unknown)}")
    return [run_suite(name, seed, trials) for name in selected]
