"""Symmetric group cohomology via the normalized bar resolution."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finsub.groupcoh import (
    CoefficientAction,
    Permutation,
    ResourceError,
    bar_cochain_complex,
    group_cohomology,
    symmetric_group,
)


def test_permutation_basics():
    p = Permutation((1, 0, 2))
    assert p.sign() == -1
    q = Permutation((1, 2, 0))
    assert q.sign() == 1
    assert (p * p).is_identity()
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


@given(st.permutations(list(range(4))), st.permutations(list(range(4))))
@settings(max_examples=60, deadline=None)
def test_sign_is_multiplicative(a, b):
    pa, pb = Permutation(tuple(a)), Permutation(tuple(b))
    assert (pa * pb).sign() == pa.sign() * pb.sign()


def test_enumeration_lexicographic():
    s3 = symmetric_group(3)
    assert [p.images for p in s3[:3]] == [(0, 1, 2), (0, 2, 1), (1, 0, 2)]
    assert len(s3) == 6


def test_normalized_sizes():
    c2 = bar_cochain_complex(2, CoefficientAction("trivial"), 2)
    assert c2.dims == [1, 1, 1, 1]
    c3 = bar_cochain_complex(3, CoefficientAction("trivial"), 2)
    assert c3.dims[2] == 25


def test_coboundary_squares_to_zero():
    c = bar_cochain_complex(3, CoefficientAction("sign"), 3)
    assert c.validate() == []


@pytest.mark.parametrize("n,action,r,expect", [
    (2, "trivial", 0, "Z"),
    (3, "trivial", 0, "Z"),
    (4, "trivial", 0, "Z"),
    (2, "sign", 0, "0"),
    (3, "sign", 0, "0"),
    (4, "sign", 0, "0"),
    (2, "trivial", 1, "0"),
    (3, "trivial", 1, "0"),
    (4, "trivial", 1, "0"),
    (2, "sign", 1, "Z/2"),
    (3, "sign", 1, "Z/2"),
    (4, "sign", 1, "Z/2"),
    (2, "trivial", 2, "Z/2"),
    (3, "trivial", 2, "Z/2"),
    (2, "sign", 2, "0"),
    (3, "sign", 2, "Z/3"),
    (2, "trivial", 3, "0"),
    (2, "sign", 3, "Z/2"),
])
def test_known_cohomology(n, action, r, expect):
    assert str(group_cohomology(n, action, r)) == expect


def test_positive_degrees_are_finite():
    for n in (2, 3):
        for action in ("trivial", "sign"):
            for r in (1, 2):
                g = group_cohomology(n, action, r)
                assert g.rank == 0


def test_budget_guard():
    with pytest.raises(ResourceError, match="ceiling"):
        bar_cochain_complex(4, CoefficientAction("trivial"), 4, ceiling=10_000)


def test_trivial_group():
    assert str(group_cohomology(1, "trivial", 0)) == "Z"
    assert str(group_cohomology(1, "trivial", 2)) == "0"
