import pytest
from hypothesis import given

from conftest import complexes
from lyubeznik.errors import NotAFace, UserInputError
from lyubeznik.field_linalg import QQ, FieldSpec
from lyubeznik.simplicial import (
    SimplicialComplex,
    bits,
    mask_of,
    maximal_sets,
    reduced_cohomology_dims,
    reduced_euler_characteristic,
    submasks,
)
from lyubeznik.verify import RP2_FACETS
from oracles import all_faces, link_faces, reduced_cohomology


def as_sets(masks):
    return {frozenset(bits(m)) for m in masks}


def test_bit_helpers():
    assert bits(0b1011) == [0, 1, 3]
    assert mask_of([0, 1, 3]) == 0b1011
    assert sorted(submasks(0b101)) == [0, 1, 4, 5]
    assert maximal_sets([1, 3, 4, 3]) == (3, 4)


def test_void_and_irrelevant():
    assert SimplicialComplex.void(3).is_void
    irr = SimplicialComplex.irrelevant(3)
    assert irr.faces == (0,) and irr.ring_dim == 0
    assert reduced_cohomology_dims(irr) == [1]
    assert reduced_cohomology_dims(SimplicialComplex.void(2)) == [0]


def test_facets_are_maximalized_and_validated():
    d = SimplicialComplex.from_facets(3, [(0, 1), (0,), (0, 1)])
    assert d.facets == (0b11,)
    with pytest.raises(UserInputError):
        SimplicialComplex(2, (0b100,))


@given(complexes())
def test_faces_match_definition(delta):
    facets = [tuple(bits(f)) for f in delta.facets]
    assert as_sets(delta.faces) == all_faces(delta.n, facets)
    assert sum(delta.f_vector()) == len(delta.faces)


@given(complexes())
def test_link_matches_definition(delta):
    faces = all_faces(delta.n, [tuple(bits(f)) for f in delta.facets])
    for F in delta.faces:
        assert as_sets(delta.link(F).faces) == link_faces(faces, frozenset(bits(F)))


def test_link_of_a_nonface():
    with pytest.raises(NotAFace):
        SimplicialComplex.from_facets(2, [(0,), (1,)]).link(0b11)


@given(complexes())
def test_induced_subcomplex(delta):
    W = (1 << delta.n) - 1 >> 1
    assert all(f & ~W == 0 for f in delta.induced_subcomplex(W).faces)
    assert set(delta.induced_subcomplex(W).faces) == {f for f in delta.faces if f & ~W == 0}


@given(complexes())
def test_alexander_dual_definition_and_involution(delta):
    full = (1 << delta.n) - 1
    dual = delta.alexander_dual()
    for s in range(1 << delta.n):
        assert dual.is_face(s) == (not delta.is_face(full & ~s))
    if not dual.is_void:
        assert dual.alexander_dual() == delta


@given(complexes())
def test_reduced_cohomology_matches_oracle_and_euler(delta):
    faces = all_faces(delta.n, [tuple(bits(f)) for f in delta.facets])
    for p in (0, 2):
        dims = reduced_cohomology_dims(delta, FieldSpec(p))
        oracle = reduced_cohomology(faces, p)
        assert {k - 1: v for k, v in enumerate(dims)} == oracle
    dims = reduced_cohomology_dims(delta)
    assert sum((-1) ** (k - 1) * v for k, v in enumerate(dims)) == reduced_euler_characteristic(delta)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_sphere_cohomology(n):
    sphere = SimplicialComplex(n, tuple(((1 << n) - 1) & ~(1 << v) for v in range(n)))
    dims = reduced_cohomology_dims(sphere)
    assert dims == [0] * (n - 1) + [1]


def test_projective_plane_depends_on_characteristic():
    rp2 = SimplicialComplex.from_facets(6, RP2_FACETS)
    assert rp2.f_vector() == [1, 6, 15, 10]
    assert reduced_cohomology_dims(rp2, QQ) == [0, 0, 0, 0]
    assert reduced_cohomology_dims(rp2, FieldSpec(2)) == [0, 0, 1, 1]


def test_reindexed():
    d = SimplicialComplex.from_facets(4, [(1, 3)])
    assert d.reindexed(0b1010).facets == (0b11,)
    with pytest.raises(UserInputError):
        d.reindexed(0b0010)


def test_str_is_one_based():
    assert str(SimplicialComplex.from_facets(3, [(0, 2), (1,)])) == "{{2}, {1,3}}"
