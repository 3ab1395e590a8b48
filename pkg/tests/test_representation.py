import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.harness.generators import example_2_5
from src.representation.hom import IsoOutcome, IsoSearchSettings, hom_dim, hom_space, is_isomorphic
from src.representation.module import (
    Morphism,
    Representation,
    direct_sum,
    loewy_length,
    projective_module,
    radical_layers,
    regular_module,
    simple_module,
    top_dims,
)
from src.representation.nakayama import enumerate_indecomposables_nakayama, is_nakayama, is_uniserial
from src.utils.exceptions import AlgebraMismatch, NotNakayama


def test_projective_dimension_vectors(lambda4, a2):
    assert projective_module(lambda4, 1).dimension_vector == (1, 1, 0, 0)
    assert projective_module(lambda4, 4).dimension_vector == (1, 0, 0, 1)
    assert projective_module(a2, 1).dimension_vector == (1, 1)
    assert projective_module(a2, 2).dimension_vector == (0, 1)


def test_regular_modules(a2, lambda4):
    left = regular_module(a2, "left")
    right = regular_module(a2, "right")
    assert left.dimension_vector == (1, 2)
    assert right.dimension_vector == (2, 1)
    assert left.total_dim == right.total_dim == 3
    assert regular_module(lambda4).total_dim == 8
    with pytest.raises(ValueError):
        regular_module(a2, "middle")


def test_projective_hom_is_path_space(lambda4):
    p1 = projective_module(lambda4, 1)
    p2 = projective_module(lambda4, 2)
    assert hom_dim(p1, p2) == 0
    assert hom_dim(p2, p1) == 1
    assert hom_dim(p1, p1) == 1


def test_hom_from_projective_is_vertex_space(lambda5):
    for module in enumerate_indecomposables_nakayama(lambda5):
        for vertex in lambda5.vertices:
            assert hom_dim(projective_module(lambda5, vertex), module) == module.dims[vertex]


def test_hom_basis_elements_commute(lambda4):
    modules = enumerate_indecomposables_nakayama(lambda4)
    for source in modules:
        for target in modules:
            for f in hom_space(source, target):
                assert f.commutes()


def test_relation_violation_is_rejected(lambda4):
    with pytest.raises(ValueError):
        Representation(lambda4, {"1": 1, "2": 1, "3": 1}, {"a1": [[1]], "a2": [[1]]})
    with pytest.raises(ValueError):
        Representation(lambda4, {"1": 1, "2": 1}, {"a1": [[1, 1]]})


def test_non_commuting_morphism_is_rejected(lambda4):
    p1 = projective_module(lambda4, 1)
    p2 = projective_module(lambda4, 2)
    s2 = simple_module(lambda4, 2)
    # S(2) は P(1) の socle
    assert Morphism(s2, p1, {"2": [[1]]}).rank == 1
    # a1 -> e2 は e1 の行き先と可換にならない
    with pytest.raises(ValueError):
        Morphism(p1, p2, {"2": [[1]]})


def test_algebra_mismatch(lambda4, a2):
    with pytest.raises(AlgebraMismatch):
        hom_dim(simple_module(lambda4, 1), simple_module(a2, 1))


def test_radical_structure(lambda4):
    projective = projective_module(lambda4, 1)
    assert top_dims(projective) == {"1": 1, "2": 0, "3": 0, "4": 0}
    assert loewy_length(projective) == 2
    assert radical_layers(projective)[1] == {"1": 0, "2": 1, "3": 0, "4": 0}


def test_isomorphism_with_witness(lambda4):
    projective = projective_module(lambda4, 2)
    twisted = Representation(lambda4, {"2": 1, "3": 1}, {"a2": [[1]]}, name="twisted")
    result = is_isomorphic(projective, twisted)
    assert result.outcome == IsoOutcome.YES
    assert result.witness.commutes()
    assert result.inverse.compose(result.witness).is_identity()


def test_isomorphism_rejections(lambda4, a2):
    assert is_isomorphic(simple_module(lambda4, 1), simple_module(lambda4, 2)).outcome == IsoOutcome.NO
    split = Representation(a2, {"1": 1, "2": 1})
    assert is_isomorphic(split, projective_module(a2, 1)).outcome == IsoOutcome.NO


def test_isomorphism_undetermined_when_search_is_capped(kronecker):
    # 同じ加群の直和を大きくすると Hom が大きくなり、全数探索の上限を超える
    simple = simple_module(kronecker, 1)
    big = direct_sum(*([simple] * 5))
    capped = IsoSearchSettings(exhaustive_limit=2, random_trials=0)
    assert is_isomorphic(big, big, capped).outcome == IsoOutcome.UNDETERMINED
    assert is_isomorphic(big, big).outcome == IsoOutcome.YES


def test_nakayama_recognition(lambda4, a2, semisimple3, kronecker, loop):
    assert is_nakayama(lambda4)
    assert is_nakayama(a2)
    assert is_nakayama(semisimple3)
    assert is_nakayama(loop)
    assert not is_nakayama(kronecker)
    assert not is_uniserial(projective_module(kronecker, 1))


def test_enumeration_counts(lambda4, a2, semisimple3, loop, kronecker):
    assert [m.label for m in enumerate_indecomposables_nakayama(a2)] == ["S(1)", "P(1)", "P(2)"]
    assert len(enumerate_indecomposables_nakayama(lambda4)) == 8
    assert len(enumerate_indecomposables_nakayama(semisimple3)) == 3
    assert [m.label for m in enumerate_indecomposables_nakayama(loop)] == ["S(1)", "P(1)"]
    with pytest.raises(NotNakayama):
        enumerate_indecomposables_nakayama(kronecker)


def test_enumerated_modules_are_pairwise_non_isomorphic(lambda5):
    modules = enumerate_indecomposables_nakayama(lambda5)
    for i, first in enumerate(modules):
        assert hom_dim(first, first) >= 1
        for second in modules[i + 1:]:
            assert not is_isomorphic(first, second).is_yes


LAMBDA4 = example_2_5(4)
CORPUS = enumerate_indecomposables_nakayama(LAMBDA4)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CORPUS), st.sampled_from(CORPUS), st.sampled_from(CORPUS))
def test_hom_is_additive(source, first, second):
    assert hom_dim(source, direct_sum(first, second)) == hom_dim(source, first) + hom_dim(source, second)
    assert hom_dim(direct_sum(first, second), source) == hom_dim(first, source) + hom_dim(second, source)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(CORPUS))
def test_direct_sum_block_structure(module):
    doubled = direct_sum(module, module)
    assert doubled.dimension_vector == tuple(2 * d for d in module.dimension_vector)
    for label, matrix in doubled.action.items():
        rows, cols = module.action[label].shape
        assert not np.any(matrix[:rows, cols:])
        assert not np.any(matrix[rows:, :cols])
