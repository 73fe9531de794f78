"""Smith normal form and sparse integer linear algebra, checked against
independent dense oracles (gcd-of-minors and Bareiss determinants)."""

import random
from itertools import combinations
from math import gcd

import pytest

from finsub.snf import (
    SparseIntMatrix,
    diagonalize,
    invariant_factors,
    kernel_basis,
    rank,
    smith_normal_form,
    xgcd,
)


# -- independent oracles ----------------------------------------------------

def bareiss_det(m):
    """Fraction-free determinant of a dense square integer matrix."""
    a = [row[:] for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def minors_gcd_factors(dense):
    """Invariant factors via determinant divisors: d_k = D_k / D_{k-1}."""
    nr = len(dense)
    nc = len(dense[0]) if nr else 0
    divisors = [1]
    for k in range(1, min(nr, nc) + 1):
        g = 0
        for rows_sel in combinations(range(nr), k):
            for cols_sel in combinations(range(nc), k):
                sub = [[dense[r][c] for c in cols_sel] for r in rows_sel]
                g = gcd(g, bareiss_det(sub))
                if g == 1:
                    break
            if g == 1:
                break
        if g == 0:
            break
        divisors.append(g)
    return [divisors[i] // divisors[i - 1] for i in range(1, len(divisors))]


def random_dense(rng, nr, nc, lo=-10, hi=10, density=0.7):
    return [[rng.randint(lo, hi) if rng.random() < density else 0
             for _ in range(nc)] for _ in range(nr)]


# -- basic helpers ----------------------------------------------------------

def test_xgcd():
    for a, b in [(12, 18), (-4, 6), (0, 5), (7, 0), (0, 0), (-9, -6)]:
        g, x, y = xgcd(a, b)
        assert g == gcd(a, b)
        assert x * a + y * b == g


def test_matrix_roundtrip():
    m = SparseIntMatrix.from_dense([[1, 0, -2], [0, 3, 0]])
    assert m.get(0, 2) == -2
    assert m.nnz == 3
    assert m.to_dense() == [[1, 0, -2], [0, 3, 0]]
    assert m.transpose().to_dense() == [[1, 0], [0, 3], [-2, 0]]
    m2 = SparseIntMatrix.from_triplets(2, 3, m.triplets())
    assert m == m2


def test_matrix_add_cancels():
    m = SparseIntMatrix(2, 2)
    m.add(0, 0, 5)
    m.add(0, 0, -5)
    assert m.nnz == 0


def test_index_bounds():
    m = SparseIntMatrix(2, 2)
    with pytest.raises(IndexError):
        m.set(2, 0, 1)


# -- invariant factors -------------------------------------------------------

def test_snf_examples():
    assert invariant_factors(SparseIntMatrix.from_dense([[2, 0], [0, 3]])) == [1, 6]
    assert invariant_factors(SparseIntMatrix.zeros(3, 4)) == []
    assert invariant_factors(SparseIntMatrix.from_dense([[1, 0], [0, 0]])) == [1]


def test_snf_divisibility_chain():
    m = SparseIntMatrix.from_dense([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
    factors = invariant_factors(m)
    for a, b in zip(factors, factors[1:]):
        assert b % a == 0


def test_snf_vs_minors_oracle_random():
    rng = random.Random(20240811)
    for _ in range(120):
        nr = rng.randint(1, 5)
        nc = rng.randint(1, 5)
        dense = random_dense(rng, nr, nc)
        got = invariant_factors(SparseIntMatrix.from_dense(dense))
        want = minors_gcd_factors(dense)
        assert got == want, (dense, got, want)


def test_rank_matches_factor_count():
    rng = random.Random(7)
    for _ in range(60):
        dense = random_dense(rng, rng.randint(1, 6), rng.randint(1, 6))
        m = SparseIntMatrix.from_dense(dense)
        assert rank(m) == len(minors_gcd_factors(dense))


# -- transforms ---------------------------------------------------------------

def unimodular(m):
    d = bareiss_det(m.to_dense())
    return d in (1, -1)


def test_transforms_umv():
    rng = random.Random(99)
    for _ in range(80):
        nr = rng.randint(1, 6)
        nc = rng.randint(1, 6)
        dense = random_dense(rng, nr, nc, density=0.8)
        m = SparseIntMatrix.from_dense(dense)
        res = smith_normal_form(m, transforms=True)
        assert res.factors == minors_gcd_factors(dense)
        d = res.U.mul(m).mul(res.V)
        assert d == res.diagonal_matrix()
        assert unimodular(res.U) and unimodular(res.V)
        assert res.U.mul(res.Uinv) == SparseIntMatrix.identity(nr)
        assert res.V.mul(res.Vinv) == SparseIntMatrix.identity(nc)


def test_diagonalize_without_chain_tracks_inverses():
    rng = random.Random(3)
    for _ in range(40):
        dense = random_dense(rng, rng.randint(1, 5), rng.randint(2, 6))
        m = SparseIntMatrix.from_dense(dense)
        res = diagonalize(m, track_v=True)
        # M @ V has zero columns beyond the rank
        mv = m.mul(res.V)
        for j in range(res.rank, m.cols):
            assert not mv.column(j)
        assert res.V.mul(res.Vinv) == SparseIntMatrix.identity(m.cols)


def test_kernel_basis_spans_and_saturates():
    rng = random.Random(41)
    for _ in range(40):
        nr = rng.randint(1, 5)
        nc = rng.randint(1, 6)
        dense = random_dense(rng, nr, nc)
        m = SparseIntMatrix.from_dense(dense)
        kb = kernel_basis(m)
        assert len(kb) == nc - rank(m)
        for col in kb:
            assert not m.mul_col(col)
        if kb:
            kmat = SparseIntMatrix(nc, len(kb))
            for j, col in enumerate(kb):
                for r, v in col.items():
                    kmat.set(r, j, v)
            # a basis of a saturated lattice has all invariant factors 1
            assert invariant_factors(kmat) == [1] * len(kb)


def test_larger_sparse_identity_like():
    n = 300
    m = SparseIntMatrix(n, n)
    for i in range(n):
        m.set(i, i, 1)
        if i + 1 < n:
            m.set(i, i + 1, -1)
    assert invariant_factors(m) == [1] * n


def test_no_unit_entries_matrix():
    # forces the gcd/dense fallback path
    dense = [[4, 6], [10, 8]]
    assert invariant_factors(SparseIntMatrix.from_dense(dense)) == \
        minors_gcd_factors(dense)
    res = smith_normal_form(SparseIntMatrix.from_dense(dense), transforms=True)
    assert res.factors == minors_gcd_factors(dense)


def test_transforms_on_heavy_torsion():
    # conjugates of fixed torsion diagonals by random unimodular matrices
    # must come back with the same invariant factors and aligned transforms
    rng = random.Random(5150)
    for factors in ([2, 6, 12], [3, 3], [4, 8, 8], [2, 2, 2, 4]):
        n = len(factors)
        left = _random_unimodular(rng, n)
        right = _random_unimodular(rng, n)
        d = [[factors[i] if i == j else 0 for j in range(n)] for i in range(n)]
        m = _matmul(_matmul(left, d), right)
        sm = SparseIntMatrix.from_dense(m)
        res = smith_normal_form(sm, transforms=True)
        assert res.factors == factors
        assert res.U.mul(sm).mul(res.V) == res.diagonal_matrix()


def _random_unimodular(rng, n, steps=12):
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        q = rng.randint(-3, 3)
        for k in range(n):
            m[i][k] += q * m[j][k]
    return m


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b)))
             for j in range(len(b[0]))] for i in range(len(a))]


try:
    from hypothesis import given, settings
    from hypothesis import strategies as st

    @given(st.lists(st.lists(st.integers(-20, 20), min_size=1, max_size=5),
                    min_size=1, max_size=5).filter(
                        lambda rows: len({len(r) for r in rows}) == 1))
    @settings(max_examples=120, deadline=None)
    def test_snf_properties_hypothesis(dense):
        m = SparseIntMatrix.from_dense(dense)
        factors = invariant_factors(m)
        assert all(f > 0 for f in factors)
        for a, b in zip(factors, factors[1:]):
            assert b % a == 0
        assert factors == minors_gcd_factors(dense)
        assert len(factors) == rank(m)
except ImportError:  # pragma: no cover
    pass
