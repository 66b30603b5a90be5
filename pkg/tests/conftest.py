"""Shared independent oracles for the test suite.

These deliberately avoid the library's determinant and subset machinery:
plain Python arithmetic, permutation expansion, and explicit subset
loops, so they can catch systematic bugs in the fast paths.
"""

import itertools


def ref_det(rows):
    """Permutation-expansion determinant over plain ints or Fractions."""
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(
            1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b]
        )
        term = 1
        for i in range(n):
            term = term * rows[i][perm[i]]
        total = total - term if inversions & 1 else total + term
    return total


def ref_subset_sum(rows_list, indices):
    """Entrywise sum of the selected plain-number matrices."""
    n = len(rows_list[0])
    acc = [[0] * n for _ in range(n)]
    for idx in indices:
        for i in range(n):
            for j in range(n):
                acc[i][j] += rows_list[idx][i][j]
    return acc


def ref_alternating_det_sum(rows_list):
    """Signed subset-sum determinant total over plain numbers."""
    m = len(rows_list)
    total = 0
    for bits in range(1, 1 << m):
        indices = [i for i in range(m) if bits >> i & 1]
        d = ref_det(ref_subset_sum(rows_list, indices))
        total = total - d if len(indices) & 1 else total + d
    return total


def int_rows(matrix):
    """Raw integer rows of a library matrix over Z, Z/N, or F_p."""
    return [list(row) for row in matrix.rows]
