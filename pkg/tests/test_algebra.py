import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.algebra.bound_algebra import build_algebra, is_relabeling
from src.algebra.quiver import Path, PathElement, Quiver
from src.harness.generators import (
    a2_algebra,
    example_2_5,
    lambda_opposite_relabeling,
    loop_algebra,
    nakayama_algebra,
)
from src.utils.exceptions import InputError, NotAdmissible, NotPrime, PreconditionError


def commutative_square(relation_sign: int, p: int):
    quiver = Quiver([1, 2, 3, 4], [("a", 1, 2), ("b", 2, 4), ("c", 1, 3), ("d", 3, 4)])
    relation = PathElement.of({quiver.path(["a", "b"]): 1, quiver.path(["c", "d"]): relation_sign})
    return quiver, build_algebra(quiver, [relation], p)


def test_a2_basis_and_dimension(a2):
    assert a2.dim == 3
    assert [str(path) for path in a2.basis] == ["e1", "e2", "a"]
    assert a2.nilpotency == 2


def test_lambda_dimension_is_twice_vertices():
    for n in range(3, 9):
        assert example_2_5(n).dim == 2 * n


def test_lambda_products(lambda4):
    quiver = lambda4.quiver
    a1 = lambda4.reduce(PathElement.from_path(quiver.path(["a1"])))
    a2 = lambda4.reduce(PathElement.from_path(quiver.path(["a2"])))
    e1 = lambda4.idempotent(1)
    e2 = lambda4.idempotent(2)
    assert not lambda4.multiply(a1, a2).any()
    assert np.array_equal(lambda4.multiply(e1, a1), a1)
    assert np.array_equal(lambda4.multiply(a1, e2), a1)
    assert not lambda4.multiply(a1, e1).any()
    assert np.array_equal(lambda4.multiply(lambda4.one(), a1), a1)


def test_non_monomial_relation_normal_form():
    quiver, algebra = commutative_square(-1, 3)
    assert algebra.dim == 9
    ab = algebra.basis_index(quiver.path(["a", "b"]))
    assert algebra.reduce_path(quiver.path(["c", "d"])) == {ab: 1}

    quiver, algebra = commutative_square(1, 3)
    ab = algebra.basis_index(quiver.path(["a", "b"]))
    assert algebra.reduce_path(quiver.path(["c", "d"])) == {ab: 2}


def test_opposite_is_cached_and_involutive(lambda5):
    op = lambda5.opposite()
    assert op.dim == lambda5.dim
    assert op.name == "lambda5^op"
    assert op.opposite() is lambda5
    assert op.quiver.arrow("a1").source == "2"


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_lambda_opposite_relabeling(n):
    algebra = example_2_5(n)
    vertex_map, arrow_map = lambda_opposite_relabeling(n)
    assert is_relabeling(algebra.opposite(), algebra, vertex_map, arrow_map)


def test_relabeling_rejects_wrong_map(lambda4):
    identity_vertices = {v: v for v in lambda4.vertices}
    identity_arrows = {a.label: a.label for a in lambda4.quiver.arrows}
    assert is_relabeling(lambda4, lambda4, identity_vertices, identity_arrows)
    assert not is_relabeling(lambda4.opposite(), lambda4, identity_vertices, identity_arrows)


def test_equal_algebras_hash_alike():
    assert example_2_5(4) == example_2_5(4)
    assert hash(example_2_5(4)) == hash(example_2_5(4))
    assert example_2_5(4) != example_2_5(4, p=3)


def test_rejects_non_prime_characteristic():
    with pytest.raises(NotPrime):
        example_2_5(4, p=4)
    with pytest.raises(NotPrime):
        a2_algebra(p=1)


def test_rejects_short_relation():
    quiver = Quiver([1, 2], [("a", 1, 2)])
    with pytest.raises(NotAdmissible):
        build_algebra(quiver, [PathElement.from_path(quiver.path(["a"]))], 2)


def test_rejects_mixed_endpoints():
    quiver = Quiver([1, 2, 3], [("a", 1, 2), ("b", 2, 3), ("c", 2, 2)])
    relation = PathElement.of({quiver.path(["a", "b"]): 1, quiver.path(["a", "c"]): 1})
    with pytest.raises(NotAdmissible):
        build_algebra(quiver, [relation], 2)


def test_infinite_dimensional_hits_length_cap():
    quiver = Quiver([1], [("x", 1, 1)])
    with pytest.raises(NotAdmissible):
        build_algebra(quiver, [], 2, length_cap=5)


def test_path_cap():
    quiver = Quiver([1], [("x", 1, 1), ("y", 1, 1)])
    with pytest.raises(NotAdmissible):
        build_algebra(quiver, [], 2, length_cap=64, path_cap=50)


def test_relation_vanishing_mod_p_is_dropped():
    quiver = Quiver([1], [("x", 1, 1)])
    xx = quiver.path(["x", "x"])
    algebra = build_algebra(quiver, [PathElement.from_path(xx, 2), PathElement.from_path(xx)], 2)
    assert len(algebra.relations) == 1
    assert algebra.dim == 2


def test_quiver_validation():
    with pytest.raises(InputError):
        Quiver([1, 1], [])
    with pytest.raises(InputError):
        Quiver([1, 2], [("a", 1, 3)])
    with pytest.raises(InputError):
        Quiver([1, 2], [("a", 1, 2), ("a", 2, 1)])
    quiver = Quiver([1, 2, 3], [("a", 1, 2), ("b", 2, 3)])
    with pytest.raises(InputError):
        quiver.path(["b", "a"])
    assert quiver.path(["a", "b"]) == Path("1", "3", ("a", "b"))


def test_nakayama_generator_rejects_small_example():
    with pytest.raises(PreconditionError):
        example_2_5(2)


def test_linear_nakayama_dimension():
    # 1 -> 2 -> 3 で a1*a2 = 0
    algebra = nakayama_algebra(False, 3, [(1, 2)])
    assert algebra.dim == 5


ALGEBRAS = {
    "lambda4": example_2_5(4),
    "lambda5_p3": example_2_5(5, p=3),
    "a2": a2_algebra(),
    "loop": loop_algebra(),
    "square": commutative_square(-1, 5)[1],
}


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(sorted(ALGEBRAS)), st.data())
def test_multiplication_is_associative(name, data):
    algebra = ALGEBRAS[name]
    element = st.lists(st.integers(0, algebra.p - 1), min_size=algebra.dim, max_size=algebra.dim)
    x, y, z = (np.array(data.draw(element), dtype=np.int64) for _ in range(3))
    left = algebra.multiply(algebra.multiply(x, y), z)
    right = algebra.multiply(x, algebra.multiply(y, z))
    assert np.array_equal(left, right)


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_basis_triples_are_associative(name):
    # 200 組の基底（組数が少なければ全組）
    algebra = ALGEBRAS[name]
    if algebra.dim ** 3 <= 200:
        triples = list(itertools.product(range(algebra.dim), repeat=3))
    else:
        triples = np.random.default_rng(0).integers(0, algebra.dim, size=(200, 3)).tolist()
    for i, j, k in triples:
        x, y, z = algebra.unit(i), algebra.unit(j), algebra.unit(k)
        left = algebra.multiply(algebra.multiply(x, y), z)
        right = algebra.multiply(x, algebra.multiply(y, z))
        assert np.array_equal(left, right), (i, j, k)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(ALGEBRAS)), st.data())
def test_one_is_two_sided_unit(name, data):
    algebra = ALGEBRAS[name]
    x = np.array(
        data.draw(st.lists(st.integers(0, algebra.p - 1), min_size=algebra.dim, max_size=algebra.dim)),
        dtype=np.int64,
    )
    assert np.array_equal(algebra.multiply(algebra.one(), x), x)
    assert np.array_equal(algebra.multiply(x, algebra.one()), x)
