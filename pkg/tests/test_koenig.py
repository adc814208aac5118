import random

import pytest

from hyperalg.hypermatrix import Hypermatrix, ShapeError, all_binary, delta, random_hypermatrix
from hyperalg.koenig import (
    GluingVariant,
    KoenigHypergraph,
    compose,
    count_glued,
    count_k_complexes,
    count_tetrahedra,
    from_hypermatrix,
    k_complex_tree,
    to_hypermatrix,
)
from hyperalg.powers import enumerate_trees, evaluate_tree
from hyperalg.product import bm_product
from hyperalg.scalars import Backend

from . import oracles


def ones(n):
    return Hypermatrix.from_flat((n, n, n), [1] * n**3)


def test_delta_hypergraph():
    H = from_hypermatrix(delta(3, 2))
    assert H.hyperedges() == [(0, 0, 0), (1, 1, 1)]
    assert all(H.weight(*e) == 1 for e in H.hyperedges())


def test_roundtrip(rng):
    for _ in range(10):
        A = random_hypermatrix(rng, (3, 3, 3), values=range(-2, 3))
        assert to_hypermatrix(from_hypermatrix(A)) == A


def test_non_cubic_sizes(rng):
    A = random_hypermatrix(rng, (2, 3, 4))
    H = from_hypermatrix(A)
    assert H.sizes == (2, 3, 4)
    assert to_hypermatrix(H) == A


def test_wrong_order_rejected():
    with pytest.raises(ShapeError):
        from_hypermatrix(delta(2, 3))


def test_compose_trivial_cases():
    D = from_hypermatrix(delta(3, 3))
    assert compose(D, D, D) == D
    J = from_hypermatrix(ones(2))
    out = compose(J, J, J)
    assert [out.weight(*e) for e in out.hyperedges()] == [2] * 8


def test_compose_matches_product_on_seeded_triples():
    rng = random.Random(100)
    for _ in range(100):
        n1, n2, n3, t = (rng.randint(1, 4) for _ in range(4))
        A = random_hypermatrix(rng, (n1, t, n3), values=range(-2, 3))
        B = random_hypermatrix(rng, (n1, n2, t), values=range(-2, 3))
        C = random_hypermatrix(rng, (t, n2, n3), values=range(-2, 3))
        H = compose(from_hypermatrix(A), from_hypermatrix(B), from_hypermatrix(C))
        assert to_hypermatrix(H) == bm_product([A, B, C])
        # only red/green/blue vertices survive
        assert H.sizes == (n1, n2, n3)


def test_compose_modp(rng):
    p = 11
    ops = [random_hypermatrix(rng, (3, 3, 3), values=range(p), backend=Backend(p)) for _ in range(3)]
    H = compose(*(from_hypermatrix(A) for A in ops))
    assert to_hypermatrix(H) == bm_product(ops)


@pytest.mark.parametrize(
    "sizes, match",
    [
        (((2, 2, 2), (3, 2, 2), (2, 2, 2)), r"\(H1, H2\)"),
        (((2, 2, 2), (2, 2, 2), (2, 3, 2)), r"\(H2, H3\)"),
        (((2, 2, 2), (2, 2, 2), (2, 2, 3)), r"\(H1, H3\)"),
        (((2, 2, 2), (2, 2, 3), (2, 2, 2)), "white"),
    ],
)
def test_compose_size_errors(sizes, match):
    Hs = [KoenigHypergraph(*s) for s in sizes]
    with pytest.raises(ShapeError, match=match):
        compose(*Hs)


def test_tetrahedra_trivial():
    assert count_tetrahedra(ones(2)) == 0
    assert count_tetrahedra(ones(3)) == 3


def test_tetrahedra_oracle_exhaustive_and_random():
    for A in all_binary((2, 2, 2)):
        assert count_tetrahedra(A) == oracles.tetrahedra(A)
    rng = random.Random(4)
    for _ in range(20):
        A = random_hypermatrix(rng, (4, 4, 4))
        assert count_tetrahedra(A) == oracles.tetrahedra(A)


def test_tetrahedra_rejects_non_binary():
    with pytest.raises(ValueError):
        count_tetrahedra(ones(2).scale(2))


@pytest.mark.parametrize("variant", list(GluingVariant))
def test_glued_trivial(variant):
    assert count_glued(delta(3, 1), variant, 0, 0, 0) == 1
    if variant is GluingVariant.FIRST:
        assert {count_glued(ones(2), variant, r, g, b) for r in range(2) for g in range(2) for b in range(2)} == {4}


def test_glued_oracle():
    rng = random.Random(8)
    for _ in range(10):
        A = random_hypermatrix(rng, (3, 3, 3))
        for variant in GluingVariant:
            for r in range(3):
                for g in range(3):
                    for b in range(3):
                        assert count_glued(A, variant, r, g, b) == oracles.glued(A, variant.value, r, g, b)


def test_glued_errors():
    with pytest.raises(ValueError):
        count_glued(ones(2), "fourth", 0, 0, 0)
    with pytest.raises(IndexError):
        count_glued(ones(2), "first", 0, 2, 0)


def test_variants_biject_onto_degree5_trees(rng):
    assert sorted(v.tree for v in GluingVariant) == sorted(enumerate_trees(5))
    A = random_hypermatrix(rng, (3, 3, 3))
    for v in GluingVariant:
        total = sum(count_glued(A, v, r, g, b) for r in range(3) for g in range(3) for b in range(3))
        assert total == sum(evaluate_tree(A, v.tree).flatten())


def test_k_complexes(rng):
    A = random_hypermatrix(rng, (3, 3, 3))
    cube = bm_product([A, A, A])
    for r, g, b in [(0, 1, 2), (2, 2, 0), (1, 0, 1)]:
        assert count_k_complexes(A, 1, r, g, b) == cube[r, g, b]
        # two interior vertices: the third-slot gluing
        assert count_k_complexes(A, 2, r, g, b) == oracles.glued(A, "third", r, g, b)
    for k in range(1, 6):
        assert count_k_complexes(delta(3, 2), k, 0, 0, 0) == 1
    assert str(k_complex_tree(2)) == "Prod(A,A,Prod(A,A,A))"
    assert k_complex_tree(3).degree == 7


def test_k_complex_bounds():
    with pytest.raises(ValueError):
        count_k_complexes(ones(1), 0, 0, 0, 0)
    with pytest.raises(ValueError):
        count_k_complexes(ones(1), 3, 0, 0, 0)
