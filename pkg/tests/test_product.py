import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperalg.fixtures import load_fixture
from hyperalg.hypermatrix import Hypermatrix, ShapeError, all_binary, delta, random_hypermatrix
from hyperalg.product import (
    Convention,
    bm_product,
    bm_product_naive,
    general_bm_product,
    general_bm_product_naive,
)
from hyperalg.scalars import Backend

from . import oracles


def as_dict(H):
    return oracles.entries(H)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_delta_product_is_delta(n):
    D = delta(3, n)
    assert bm_product([D, D, D]) == D


def test_all_ones():
    J = Hypermatrix.from_flat((2, 2, 2), [1] * 8)
    assert bm_product([J, J, J]).flatten() == [2] * 8


def test_fixture_against_loop_oracle():
    A = load_fixture("first_A1")
    assert as_dict(bm_product([A, A, A])) == oracles.bm3(A, A, A)


def test_rectangular_operands_against_oracle(rng):
    # n1, n2, n3 = 2, 3, 4 with k = 5
    A1 = random_hypermatrix(rng, (2, 5, 4), values=range(-3, 4))
    A2 = random_hypermatrix(rng, (2, 3, 5), values=range(-3, 4))
    A3 = random_hypermatrix(rng, (5, 3, 4), values=range(-3, 4))
    out = bm_product([A1, A2, A3])
    assert out.dims == (2, 3, 4)
    assert as_dict(out) == oracles.bm3(A1, A2, A3)
    B = random_hypermatrix(rng, (5, 5, 5), values=range(-2, 3))
    for conv in Convention:
        got = general_bm_product([A1, A2, A3], B, conv)
        assert as_dict(got) == oracles.general3(A1, A2, A3, B, conv is Convention.REVERSED)


def test_shape_errors_name_operand_and_axis():
    A = delta(3, 2)
    with pytest.raises(ShapeError, match="operand 3 axis 0"):
        bm_product([A, A, delta(3, 3)])
    with pytest.raises(ShapeError, match="at least 2"):
        bm_product([A])
    with pytest.raises(ShapeError, match="backend"):
        bm_product([A, A, A.to_backend(Backend(7))])
    with pytest.raises(ShapeError, match="background"):
        general_bm_product([A, A, A], delta(3, 3))


@pytest.mark.parametrize("conv", list(Convention))
def test_delta_background_both_conventions(conv, rng):
    for _ in range(10):
        A = [random_hypermatrix(rng, (3, 3, 3), values=range(-4, 5)) for _ in range(3)]
        assert general_bm_product(A, delta(3, 3), conv) == bm_product(A)


def test_matrix_case_is_matrix_product(rng):
    M = random_hypermatrix(rng, (3, 4), values=range(-5, 6))
    N = random_hypermatrix(rng, (4, 2), values=range(-5, 6))
    expected = oracles.matmul([M.flatten()[4 * i : 4 * i + 4] for i in range(3)],
                              [N.flatten()[2 * i : 2 * i + 2] for i in range(4)])
    assert bm_product([M, N]).flatten() == [x for row in expected for x in row]
    assert general_bm_product([M, N], delta(2, 4)) == bm_product([M, N])


def test_matrix_literal_vs_reversed(rng):
    # literal background contraction gives A B^T A, reversed gives A B A
    A = random_hypermatrix(rng, (3, 3), values=range(-3, 4))
    B = random_hypermatrix(rng, (3, 3), values=range(-3, 4))
    rows = lambda H: [H.flatten()[3 * i : 3 * i + 3] for i in range(3)]
    Bt = [list(col) for col in zip(*rows(B))]
    lit = oracles.matmul(oracles.matmul(rows(A), Bt), rows(A))
    rev = oracles.matmul(oracles.matmul(rows(A), rows(B)), rows(A))
    assert rows(general_bm_product([A, A], B, "literal")) == lit
    assert rows(general_bm_product([A, A], B, "reversed")) == rev


def test_general_all_ones_background_oracle():
    J = Hypermatrix.from_flat((2, 2, 2), [1] * 8)
    assert general_bm_product([J, J, J], J).flatten() == [8] * 8


def test_general_binary_against_six_loop_oracle():
    rng = random.Random(11)
    for _ in range(20):
        ops = [random_hypermatrix(rng, (2, 2, 2)) for _ in range(3)]
        B = random_hypermatrix(rng, (2, 2, 2))
        for conv in Convention:
            assert as_dict(general_bm_product(ops, B, conv)) == oracles.general3(*ops, B, conv is Convention.REVERSED)


def test_order4_generic_path_matches_naive(rng):
    ops = [random_hypermatrix(rng, (2, 2, 2, 2), values=range(-2, 3)) for _ in range(4)]
    B = random_hypermatrix(rng, (2, 2, 2, 2), values=range(-2, 3))
    assert bm_product(ops) == bm_product_naive(ops)
    for conv in Convention:
        assert general_bm_product(ops, B, conv) == general_bm_product_naive(ops, B, conv)
    assert general_bm_product(ops, delta(4, 2)) == bm_product(ops)


def test_modp_product_reduces(rng):
    p = 10007
    ops = [random_hypermatrix(rng, (3, 3, 3), values=range(-50, 50)) for _ in range(3)]
    exact = bm_product(ops)
    modp = bm_product([A.to_backend(Backend(p)) for A in ops])
    assert modp == exact.to_backend(Backend(p))


@settings(max_examples=30, deadline=None)
@given(st.integers(-7, 7), st.integers(0, 2), st.randoms(use_true_random=False))
def test_multilinearity(c, slot, r):
    ops = [random_hypermatrix(r, (2, 2, 2), values=range(-3, 4)) for _ in range(3)]
    B = random_hypermatrix(r, (2, 2, 2), values=range(-3, 4))
    scaled = list(ops)
    scaled[slot] = ops[slot].scale(c)
    assert bm_product(scaled) == bm_product(ops).scale(c)
    assert general_bm_product(scaled, B) == general_bm_product(ops, B).scale(c)


def test_kernels_match_naive_exhaustively_binary():
    for A in all_binary((2, 2, 2)):
        assert bm_product([A, A, A]) == bm_product_naive([A, A, A])
