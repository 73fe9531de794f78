"""Subset-space functors: tables, filtrations, configuration models."""

from math import comb

import pytest

from finsub.simplicial import sphere_model, torus_model, underlying, validate
from finsub.subsetspace import (
    BudgetError,
    conf_plus,
    exp,
    exp_bar,
    exp_based,
    tower,
)
from finsub.homology import space_homology


def test_exp_rejects_n_zero():
    with pytest.raises(ValueError):
        exp(sphere_model(1, 2), 0)


def test_exp_one_is_identity_relabeling():
    c = sphere_model(1, 3)
    e1 = exp(c, 1)
    assert underlying(e1) == underlying(c)
    assert e1.basepoint == c.basepoint


def test_exp_level_sizes_formula():
    c = sphere_model(1, 4)
    for n in (1, 2, 3):
        e = exp(c, n)
        for k in range(5):
            m = c.level_size(k)
            assert e.level_size(k) == sum(comb(m, j) for j in range(1, min(n, m) + 1))
    assert exp(c, 2).level_size(2) == 6


def test_exp_sphere2_vertex():
    assert exp(sphere_model(2, 4), 3).level_size(0) == 1


def test_exp_validates():
    assert validate(exp(sphere_model(1, 4), 3)).ok
    assert validate(exp(sphere_model(2, 5), 2)).ok
    assert validate(exp(torus_model(3), 2)).ok


def test_exp_based_counts_and_inclusion():
    c = sphere_model(1, 4)
    based, incl = exp_based(c, 2)
    # subsets of size <= 2 containing the basepoint: {*} plus pairs
    assert based.level_size(2) == 3
    assert incl.is_valid()
    assert incl.is_injective()
    assert validate(based).ok
    assert exp_based(c, 1)[0].levels == [1] * 5


def test_exp_bar_counts():
    c = sphere_model(1, 4)
    bar, qmap = exp_bar(c, 2)
    assert bar.level_size(2) == 4  # 6 - 3 collapsed + 1 basepoint
    assert qmap.is_valid()
    for k in range(5):
        assert set(qmap.maps[k]) == set(range(bar.level_size(k)))


def test_exp_bar_one_keeps_reduced_homology():
    s2 = sphere_model(2, 4)
    bar1, _ = exp_bar(s2, 1)
    assert space_homology(bar1, reduced=True, maxdeg=3) == \
        space_homology(s2, reduced=True, maxdeg=3)


def test_exp_bar_s2_two_top_class():
    bar, _ = exp_bar(sphere_model(2, 5), 2)
    h = space_homology(bar, reduced=True)
    assert [str(g) for g in h] == ["0", "0", "0", "0", "Z"]


def test_conf_plus_point_is_sphere():
    cp = conf_plus(sphere_model(2, 3), 1, "based")
    assert [str(g) for g in space_homology(cp, reduced=True)] == ["0", "0", "Z"]


@pytest.mark.parametrize("n,d", [(1, 2), (2, 2), (1, 3), (2, 3)])
def test_conf_plus_models_agree(n, d):
    base = sphere_model(d, n * d + 1)
    ha = space_homology(conf_plus(base, n, "based"), reduced=True)
    hb = space_homology(conf_plus(base, n, "bar"), reduced=True)
    assert ha == hb


def test_conf_plus_two_in_plane():
    cp = conf_plus(sphere_model(2, 5), 2, "bar")
    h = space_homology(cp, reduced=True)
    assert [str(g) for g in h] == ["0", "0", "0", "Z", "Z"]


def test_conf_plus_rejects_bad_model():
    with pytest.raises(ValueError):
        conf_plus(sphere_model(2, 3), 1, "nonsense")


def test_tower_inclusions_validate():
    tw = tower(sphere_model(2, 5), 3, "bar", trunc=5)
    assert tw.n == 3
    for incl in tw.inclusions:
        assert incl.is_valid()
        assert incl.is_injective()
    for space in tw.spaces:
        assert validate(space).ok


@pytest.mark.parametrize("variant", ["exp", "based", "bar"])
def test_tower_composition_functorial(variant):
    tw = tower(sphere_model(1, 4), 3, variant)
    direct = tw.inclusion(1, 3)
    composed = tw.inclusions[0].compose(tw.inclusions[1])
    assert direct.maps == composed.maps


@pytest.mark.parametrize("variant", ["exp", "based", "bar"])
def test_tower_level_sizes_weakly_increase(variant):
    tw = tower(sphere_model(2, 5), 3, variant)
    for a, b in zip(tw.spaces, tw.spaces[1:]):
        for k in range(a.trunc + 1):
            assert a.level_size(k) <= b.level_size(k)


def test_tower_filtration_property():
    # faces and degeneracies of a lower stage, computed upstairs, stay in
    # the lower stage's image: exactly the nested-tables property
    tw = tower(sphere_model(1, 4), 3, "exp")
    big = tw.spaces[2]
    incl = tw.inclusion(2, 3)
    img = [set(incl.maps[k]) for k in range(big.trunc + 1)]
    for k in range(1, big.trunc + 1):
        for i in range(k + 1):
            for s in img[k]:
                assert big.face(k, i, s) in img[k - 1]
    for k in range(big.trunc):
        for j in range(k + 1):
            for s in img[k]:
                assert big.degeneracy(k, j, s) in img[k + 1]


def test_budget_guard():
    with pytest.raises(BudgetError, match="ceiling"):
        exp(sphere_model(2, 9), 4, ceiling=1000)


def test_trunc_validation():
    with pytest.raises(ValueError):
        exp(sphere_model(1, 3), 2, trunc=5)


def test_exp_labels():
    e = exp(sphere_model(1, 2), 2, with_labels=True)
    labels = underlying(e).labels
    assert labels is not None
    assert labels[0] == ["{*}"]
    assert "{*,01}" in labels[1]
