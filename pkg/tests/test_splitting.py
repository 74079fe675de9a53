import numpy as np
import pytest

from specfam.core import frobenius, inner
from specfam.splitting import (
    bounded_transform,
    check_form_identity,
    check_sign_inequalities,
    split,
)

from _oracles import random_hermitian, random_indefinite, random_unit


def test_bounded_transform_zero():
    np.testing.assert_array_equal(bounded_transform(np.zeros((2, 2))), np.zeros((2, 2)))


def test_bounded_transform_scalar():
    np.testing.assert_allclose(bounded_transform(np.diag([1.0])), [[0.5]], atol=1e-15)


def test_bounded_transform_diagonal_values():
    b = bounded_transform(np.diag([-1.0, 2.0]))
    np.testing.assert_allclose(np.diag(b), [-0.5, 0.4], atol=1e-14)


def test_bounded_transform_norm_bound():
    rng = np.random.default_rng(3)
    for trial in range(60):
        d = int(rng.integers(1, 13))
        mode = "complex" if trial % 2 else "real"
        a = random_hermitian(d, rng, mode, eigenvalues=rng.uniform(-5, 5, d))
        b = bounded_transform(a)
        assert np.linalg.norm(b, 2) <= 0.5 + 1e-12
        # against the scalar map t / (1 + t^2)
        w = np.linalg.eigvalsh(a)
        ref = np.sort(w / (1.0 + w * w))
        np.testing.assert_allclose(np.linalg.eigvalsh(b), ref, atol=1e-12)


def test_split_diagonal_indefinite():
    deco = split(np.diag([-1.0, 2.0]))
    assert (deco.rank_minus, deco.rank_plus) == (1, 1)
    np.testing.assert_allclose(deco.E, np.diag([1.0, 0.0]), atol=1e-12)
    np.testing.assert_allclose(deco.A_minus, [[-1.0]], atol=1e-12)
    np.testing.assert_allclose(deco.A_plus, [[2.0]], atol=1e-12)


def test_split_zero_operator_sits_in_minus():
    deco = split(np.zeros((2, 2)))
    assert (deco.rank_minus, deco.rank_plus) == (2, 0)
    np.testing.assert_allclose(deco.A_minus, np.zeros((2, 2)), atol=1e-15)


def test_split_kernel_lands_in_minus():
    deco = split(np.diag([0.0, 1.0]))
    assert (deco.rank_minus, deco.rank_plus) == (1, 1)
    np.testing.assert_allclose(deco.E, np.diag([1.0, 0.0]), atol=1e-10)


def test_split_rank_matches_sign_count():
    rng = np.random.default_rng(5)
    for trial in range(25):
        mode = "complex" if trial % 2 else "real"
        d = int(rng.integers(2, 11))
        a = random_indefinite(d, rng, mode)
        deco = split(a)
        w = np.linalg.eigvalsh(a)
        assert deco.rank_minus == int(np.sum(w <= 0))
        assert deco.rank_plus == d - deco.rank_minus


def test_split_commutation_chain():
    rng = np.random.default_rng(7)
    for trial in range(20):
        mode = "complex" if trial % 2 else "real"
        d = int(rng.integers(2, 10))
        a = random_indefinite(d, rng, mode)
        deco = split(a)
        assert frobenius(deco.E @ deco.B - deco.B @ deco.E) <= 1e-10
        resolvent = np.linalg.inv(np.eye(d, dtype=a.dtype) + a @ a)
        assert frobenius(deco.E @ resolvent - resolvent @ deco.E) <= 1e-10
        assert frobenius(deco.E @ a - a @ deco.E) <= 1e-9 * frobenius(a)


def test_split_spectra_and_reconstruction():
    rng = np.random.default_rng(9)
    for trial in range(25):
        mode = "complex" if trial % 2 else "real"
        d = int(rng.integers(2, 11))
        a = random_indefinite(d, rng, mode)
        deco = split(a)
        merged = np.sort(np.concatenate([
            np.linalg.eigvalsh(deco.A_minus) if deco.rank_minus else np.array([]),
            np.linalg.eigvalsh(deco.A_plus) if deco.rank_plus else np.array([]),
        ]))
        np.testing.assert_allclose(merged, np.linalg.eigvalsh(a), atol=1e-8)
        assembled = (
            deco.basis_minus @ deco.A_minus @ deco.basis_minus.conj().T
            + deco.basis_plus @ deco.A_plus @ deco.basis_plus.conj().T
        )
        assert frobenius(assembled - a) <= 1e-9 * frobenius(a)
        # sign constraints
        if deco.rank_minus:
            assert np.linalg.eigvalsh(deco.A_minus)[-1] <= 1e-9 * frobenius(a)
        if deco.rank_plus:
            assert np.linalg.eigvalsh(deco.A_plus)[0] >= -1e-9 * frobenius(a)


def test_split_beta_override():
    a = np.diag([-1.0, 2.0])
    deco = split(a, beta=2.5)
    assert deco.beta == 2.5
    assert (deco.rank_minus, deco.rank_plus) == (1, 1)
    with pytest.raises(ValueError):
        split(a, beta=1.2)  # cannot dominate 1 + ||B||


def test_form_identity_zero_vector():
    assert check_form_identity(np.diag([1.0, -2.0]), np.zeros(2)) == 0.0


def test_form_identity_scalar():
    # <Ax,x> = 1, <Bx,x> = 1/2, <B Ax, Ax> = 1/2
    assert check_form_identity(np.diag([1.0]), np.array([1.0])) <= 1e-15


def test_form_identity_randomized():
    rng = np.random.default_rng(11)
    for trial in range(200):
        d = int(rng.integers(1, 13))
        mode = "complex" if trial % 2 else "real"
        a = random_hermitian(d, rng, mode, eigenvalues=rng.uniform(-3, 3, d))
        x = random_unit(d, rng, mode)
        assert check_form_identity(a, x) <= 1e-9 * (1.0 + frobenius(a) ** 2)


def test_sign_inequalities_frozen_values():
    b = bounded_transform(np.diag([-1.0, 2.0]))
    assert abs(inner(b @ np.array([1.0, 0.0]), np.array([1.0, 0.0])) + 0.5) <= 1e-14
    assert abs(inner(b @ np.array([0.0, 1.0]), np.array([0.0, 1.0])) - 0.4) <= 1e-14


def test_sign_inequalities_randomized():
    rng = np.random.default_rng(13)
    for trial in range(30):
        mode = "complex" if trial % 2 else "real"
        d = int(rng.integers(2, 10))
        deco = split(random_indefinite(d, rng, mode))
        assert check_sign_inequalities(deco, trials=50, rng=rng)


def test_split_output_is_frozen():
    deco = split(np.diag([-1.0, 2.0]))
    with pytest.raises(ValueError):
        deco.E[0, 0] = 5.0
