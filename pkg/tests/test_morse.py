import pytest

from monoid_collapse import fixtures
from monoid_collapse.errors import NotComplete
from monoid_collapse.morse import (
    Resolution,
    build_resolution,
    enumerate_essential,
    morse_boundary,
    trivialize,
)
from monoid_collapse.nerve import Variant
from monoid_collapse.ring import BiRingElement, MonoidRingElement
from monoid_collapse.rewriting import RewritingSystem, opposite

from conftest import SYSTEMS


def fmt_cells(rs, cells):
    return [tuple(rs.format(w) for w in c) for c in cells]


def test_essential_examples():
    b = fixtures.bicyclic()
    assert enumerate_essential(b, 0) == [()]
    assert fmt_cells(b, enumerate_essential(b, 1)) == [("a",), ("b",)]
    assert fmt_cells(b, enumerate_essential(b, 2)) == [("a", "b")]
    assert enumerate_essential(b, 3) == []
    assert enumerate_essential(fixtures.free(2), 2) == []
    z = fixtures.integers()
    assert fmt_cells(z, enumerate_essential(z, 2)) == [("a", "b"), ("b", "a")]
    assert fmt_cells(z, enumerate_essential(z, 3)) == [("a", "b", "a"), ("b", "a", "b")]


def test_boundary_examples():
    b = fixtures.bicyclic()
    a_, b_ = (0,), (1,)
    assert morse_boundary((a_,), Variant.LEFT, b) == {(): MonoidRingElement({a_: 1, (): -1})}
    assert morse_boundary((a_, b_), Variant.LEFT, b) == {
        (b_,): MonoidRingElement.of(a_), (a_,): MonoidRingElement.of(())}
    z2 = fixtures.z2()
    d = morse_boundary((a_, a_), Variant.LEFT, z2)
    assert d == {(a_,): MonoidRingElement({a_: 1, (): 1})}
    assert d[(a_,)].format(z2) == "a + 1"
    d = morse_boundary((a_, a_), Variant.BI, z2)
    assert d == {(a_,): BiRingElement({(a_, ()): 1, ((), a_): 1})}
    assert d[(a_,)].format(z2) == "a⊗1 + 1⊗a"
    assert morse_boundary((a_,), Variant.BI, z2)[()].format(z2) == "a⊗1 - 1⊗a"


def test_resolution_examples():
    assert build_resolution(fixtures.bicyclic(), 4).ranks == [1, 2, 1, 0, 0]
    assert build_resolution(fixtures.free(2), 3, Variant.BI).ranks == [1, 2, 0, 0]
    for v in (Variant.LEFT, Variant.RIGHT, Variant.BI):
        assert build_resolution(fixtures.trivial(), 3, v).ranks == [1, 0, 0, 0]


def test_trivialize_examples():
    cx = trivialize(build_resolution(fixtures.bicyclic(), 3))
    assert cx.boundary(2).to_rows() == [[1], [1]]
    cx = trivialize(build_resolution(fixtures.z2(), 6))
    assert [cx.boundary(n).to_rows() for n in range(1, 7)] == [[[0]], [[2]], [[0]], [[2]], [[0]], [[2]]]
    cx = trivialize(build_resolution(fixtures.free(2), 3))
    assert all(cx.boundary(n).is_zero() for n in (1, 2, 3))


def test_requires_complete_system():
    with pytest.raises(NotComplete):
        build_resolution(RewritingSystem.from_strings("a", [("aa", "")]), 2)


def test_d_squared_negative_control():
    res = build_resolution(fixtures.z2(), 3)
    broken = [row[:] for row in res.boundaries[2]]
    broken[0][0] = MonoidRingElement.of((0,))
    bad = Resolution(res.variant, res.rs, res.basis, res.boundaries[:2] + [broken] + res.boundaries[3:])
    assert bad.d_squared_witness() is not None


@pytest.mark.parametrize("name", sorted(SYSTEMS))
@pytest.mark.parametrize("variant", [Variant.LEFT, Variant.RIGHT, Variant.BI])
def test_d_squared_zero_through_dim_5(name, variant):
    # build_resolution raises DSquaredNonzero otherwise; assert the witness too
    res = build_resolution(SYSTEMS[name], 5, variant)
    assert res.d_squared_witness() is None
    assert res.ranks == [len(enumerate_essential(res.rs if variant != Variant.RIGHT
                                                 else opposite(res.rs), n)) for n in range(6)]


@pytest.mark.parametrize("name", sorted(SYSTEMS))
def test_one_essential_cell_per_rule(name):
    rs = SYSTEMS[name]
    assert len(enumerate_essential(rs, 2)) == len(rs.rules)
    assert len(enumerate_essential(rs, 1)) == len(rs.alphabet)


@pytest.mark.parametrize("name", sorted(SYSTEMS))
def test_right_is_mirrored_left_of_opposite(name):
    rs = SYSTEMS[name]
    right = build_resolution(rs, 3, Variant.RIGHT)
    left = build_resolution(opposite(rs), 3, Variant.LEFT)
    mirror = lambda c: tuple(w[::-1] for w in reversed(c))  # noqa: E731
    for n in range(4):
        assert right.basis[n] == [mirror(c) for c in left.basis[n]]
    for n in range(1, 4):
        for i, row in enumerate(left.boundaries[n]):
            for j, e in enumerate(row):
                assert right.boundaries[n][i][j].terms == {w[::-1]: k for w, k in e.terms.items()}


@pytest.mark.parametrize("name", sorted(SYSTEMS))
def test_h0_is_z(name):
    from monoid_collapse.homology import homology_of_complex

    cx = trivialize(build_resolution(SYSTEMS[name], 2))
    h = homology_of_complex(cx, 0)
    assert (h.betti, h.torsion) == (1, ())


def test_flow_fuel_is_enforced():
    from monoid_collapse.errors import FuelExhausted

    with pytest.raises(FuelExhausted):
        build_resolution(fixtures.s3(), 4, fuel=3)
