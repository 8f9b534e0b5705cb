from math import gcd
import random

import pytest
from hypothesis import given
import hypothesis.strategies as st

from monoid_collapse import fixtures
from monoid_collapse.errors import BoundaryMismatch, NotFinite
from monoid_collapse.homology import (
    ChainComplexZ,
    HomologyGroup,
    IntegerMatrix,
    bar_complex_oracle,
    homology_of_complex,
    smith_normal_form,
    verify_exactness,
)
from monoid_collapse.morse import Resolution, build_resolution, trivialize
from monoid_collapse.nerve import Variant
from monoid_collapse.ring import MonoidRingElement

from oracles import determinantal_divisors

matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


def nonzero(snf):
    return [d for d in snf.diagonal if d]


def test_snf_examples():
    assert smith_normal_form([[2]]).diagonal == (2,)
    assert smith_normal_form([[1, 0], [0, 1]]).diagonal == (1, 1)
    assert smith_normal_form([[2, 4], [6, 8]]).diagonal == (2, 4)
    assert determinantal_divisors([[2, 4], [6, 8]]) == [2, 4]
    assert smith_normal_form(IntegerMatrix.zero(3, 2)).diagonal == (0, 0)


@given(matrices)
def test_snf_matches_determinantal_divisors(rows):
    assert nonzero(smith_normal_form(rows)) == determinantal_divisors(rows)


@given(matrices, st.randoms(use_true_random=False))
def test_snf_invariant_under_permutation_and_transpose(rows, rng):
    base = smith_normal_form(rows).diagonal
    perm_rows = rows[:]
    rng.shuffle(perm_rows)
    cols = list(range(len(rows[0])))
    rng.shuffle(cols)
    permuted = [[r[j] for j in cols] for r in perm_rows]
    assert smith_normal_form(permuted).diagonal == base
    assert smith_normal_form([list(c) for c in zip(*rows)]).diagonal == base


@given(matrices)
def test_snf_divisibility_chain(rows):
    ds = nonzero(smith_normal_form(rows))
    assert all(b % a == 0 for a, b in zip(ds, ds[1:]))


def test_snf_larger_sparse_matrix():
    rng = random.Random(7)
    rows = [[rng.choice([0, 0, 0, 1, -1, 2, 3]) for _ in range(8)] for _ in range(7)]
    assert nonzero(smith_normal_form(rows)) == determinantal_divisors(rows)


def test_homology_examples():
    cx = trivialize(build_resolution(fixtures.z2(), 3))
    assert homology_of_complex(cx, 1) == HomologyGroup(0, (2,))
    cx = trivialize(build_resolution(fixtures.bicyclic(), 3))
    assert homology_of_complex(cx, 1) == HomologyGroup(1, ())
    cx = trivialize(build_resolution(fixtures.integers(), 4))
    assert homology_of_complex(cx, 2) == HomologyGroup(0, ())
    assert str(HomologyGroup(2, (2, 6))) == "Z^2 + Z/2 + Z/6"


def test_homology_rejects_non_complex():
    m = IntegerMatrix.from_rows([[1]])
    cx = ChainComplexZ([1, 1, 1], {1: m, 2: m})
    with pytest.raises(BoundaryMismatch):
        homology_of_complex(cx, 1)


def test_bar_oracle_examples():
    assert bar_complex_oracle(fixtures.z2(), 4).ranks == [1, 1, 1, 1, 1]
    assert bar_complex_oracle(fixtures.s3(), 3).ranks == [1, 5, 25, 125]
    assert bar_complex_oracle(fixtures.trivial(), 3).ranks == [1, 0, 0, 0]
    with pytest.raises(NotFinite):
        bar_complex_oracle(fixtures.bicyclic(), 2)


@pytest.mark.parametrize("name", sorted(fixtures.FINITE))
def test_morse_agrees_with_bar_oracle(name):
    rs = fixtures.FINITE[name]()
    morse = trivialize(build_resolution(rs, 5))
    bar = bar_complex_oracle(rs, 5)
    for n in range(5):
        assert homology_of_complex(morse, n) == homology_of_complex(bar, n)


def test_exactness_examples():
    assert verify_exactness(build_resolution(fixtures.z2(), 5), 4).exact
    assert verify_exactness(build_resolution(fixtures.s3(), 4), 3).exact


@pytest.mark.parametrize("variant", [Variant.RIGHT, Variant.BI])
def test_exactness_other_sides(variant):
    assert verify_exactness(build_resolution(fixtures.z2(), 4, variant), 3).exact
    assert verify_exactness(build_resolution(fixtures.s3(), 3, variant), 2).exact


def test_exactness_negative_control():
    res = build_resolution(fixtures.z2(), 5)
    zeroed = [[MonoidRingElement() for _ in row] for row in res.boundaries[2]]
    bad = Resolution(res.variant, res.rs, res.basis,
                     res.boundaries[:2] + [zeroed] + res.boundaries[3:])
    verdict = verify_exactness(bad, 4)
    assert not verdict.exact and verdict.failed_dim == 1
    assert not verdict.defect.trivial


def test_h0_is_z_for_oracle():
    for make in fixtures.FINITE.values():
        assert homology_of_complex(bar_complex_oracle(make(), 2), 0) == HomologyGroup(1)


def test_matmul_and_transpose():
    a = IntegerMatrix.from_rows([[1, 2], [0, 3]])
    b = IntegerMatrix.from_rows([[4], [5]])
    assert (a @ b).to_rows() == [[14], [15]]
    assert a.transpose().to_rows() == [[1, 0], [2, 3]]
    assert gcd(*smith_normal_form(a).diagonal) == 1
