import numpy as np
import pytest

from specfam.core import frobenius
from specfam.subspace import (
    check_S_chain,
    check_inclusion_shift,
    check_inverse_inclusion,
    check_sandwich,
    check_square_identity,
    check_strict_lower,
    membership,
    sandwich_holds,
    subspace,
)

from _oracles import gap_midpoints, level_projector, random_hermitian, random_psd


# --- membership -----------------------------------------------------------


def test_membership_diagonal_inside():
    a = np.diag([1.0, 2.0, 3.0])
    v = membership(a, 2.0, np.array([1.0, 1.0, 0.0]))
    assert v.member
    assert abs(v.growth_rate_estimate - 2.0) < 1e-9


def test_membership_diagonal_outside():
    a = np.diag([1.0, 2.0, 3.0])
    v = membership(a, 2.0, np.array([0.0, 0.0, 1.0]))
    assert not v.member
    assert abs(v.growth_rate_estimate - 3.0) < 1e-9
    assert v.margin < 0


def test_membership_zero_vector_rejected():
    with pytest.raises(ValueError):
        membership(np.eye(2), 1.0, np.zeros(2))
    with pytest.raises(ValueError):
        membership(np.eye(2), -0.5, np.ones(2))


def test_membership_iteration_cap():
    rng = np.random.default_rng(2)
    a = random_hermitian(6, rng)
    x = rng.standard_normal(6)
    v = membership(a, 0.5, x, m_max=3)
    assert v.iterations_used <= 3


def test_membership_kernel_level():
    a = np.diag([0.0, 1.0])
    assert membership(a, 0.0, np.array([1.0, 0.0])).member
    assert not membership(a, 0.0, np.array([0.0, 1.0])).member
    # zero operator: every vector has growth rate 0
    assert membership(np.zeros((2, 2)), 0.0, np.array([1.0, 1.0])).member


def test_membership_two_component_combination():
    # components strictly below the level by a clear gap
    rng = np.random.default_rng(21)
    for mode in ("real", "complex"):
        for _ in range(10):
            values = np.sort(rng.uniform(0.1, 3.0, 6))
            a = random_hermitian(6, rng, mode, eigenvalues=values)
            w, q = np.linalg.eigh(a)
            lam = float(w[2]) + 0.1
            if np.min(np.abs(np.abs(w) - lam)) < 0.05:
                continue
            x = q[:, 0] + q[:, 1]
            assert membership(a, lam, x).member
            # adding a component above the level flips the verdict
            y = x + q[:, -1]
            if abs(w[-1]) > lam + 0.05:
                assert not membership(a, lam, y).member


def test_membership_agrees_with_reference_classification():
    rng = np.random.default_rng(7)
    total = 0
    for trial in range(130):
        d = int(rng.integers(2, 13))
        mode = "complex" if trial % 2 else "real"
        a = random_hermitian(d, rng, mode)
        w, q = np.linalg.eigh(a)
        absw = np.abs(w)
        naf = np.linalg.norm(a)
        for _ in range(9):
            lam = float(rng.uniform(0, absw.max() * 1.2))
            if np.min(np.abs(absw - lam)) < 1e-3 * naf:
                continue
            coeffs = rng.standard_normal(d)
            if mode == "complex":
                coeffs = coeffs + 1j * rng.standard_normal(d)
            x = q @ coeffs
            expect = bool(np.all(absw[np.abs(coeffs) > 1e-13] <= lam))
            assert membership(a, lam, x).member == expect
            total += 1
    assert total >= 1000


# --- subspace construction -------------------------------------------------


def test_subspace_zero_operator_level_zero_is_everything():
    gs = subspace(np.zeros((2, 2)), 0.0)
    assert gs.rank == 2
    np.testing.assert_allclose(gs.projector, np.eye(2), atol=1e-15)


def test_subspace_diagonal_selection():
    gs = subspace(np.diag([-3.0, 1.0, 2.0]), 2.0)
    np.testing.assert_allclose(gs.projector, np.diag([0.0, 1.0, 1.0]), atol=1e-12)


def test_subspace_matches_reference_projector():
    rng = np.random.default_rng(13)
    for trial in range(30):
        mode = "complex" if trial % 2 else "real"
        a = random_hermitian(8, rng, mode)
        mids = gap_midpoints(np.linalg.eigvalsh(a), 1e-6)
        if not mids:
            continue
        lam = mids[len(mids) // 2]
        gs = subspace(a, lam)
        assert frobenius(gs.projector - level_projector(a, lam)) <= 1e-8


def test_subspace_invariance_properties():
    rng = np.random.default_rng(17)
    for trial in range(25):
        d = int(rng.integers(2, 11))
        mode = "complex" if trial % 2 else "real"
        a = random_hermitian(d, rng, mode)
        mids = gap_midpoints(np.linalg.eigvalsh(a), 1e-6) or [1.0]
        lam = mids[0]
        p = subspace(a, lam).projector
        eye = np.eye(d, dtype=p.dtype)
        na = max(frobenius(a), 1e-300)
        assert frobenius((eye - p) @ a @ p) <= 1e-9 * na
        # any polynomial in A maps the subspace into itself
        coeffs = rng.standard_normal(4)
        c = coeffs[0] * eye + coeffs[1] * a + coeffs[2] * a @ a + coeffs[3] * a @ a @ a
        assert frobenius((eye - p) @ c @ p) <= 1e-9 * max(frobenius(c), 1e-300)


def test_subspace_wide_dynamic_range():
    # eigenvalue magnitudes spanning twelve orders: the classification slack
    # and the membership re-validation must agree on borderline modes
    a = np.diag([1e-6, 1.0, 1e6])
    inv = np.diag([1e6, 1.0, 1e-6])
    for lam in (9.99998000005e-07, 1e-6, 2e-6, 0.5, 1e6 + 1.0):
        gs = subspace(inv, lam)
        assert gs.rank == int(np.sum(np.abs(np.diag(inv)) <= lam * (1 + 1e-10) + 1e-12 * 1e6))
    assert subspace(a, 1.5).rank == 2


def test_subspace_monotone_in_level():
    rng = np.random.default_rng(19)
    for _ in range(15):
        a = random_hermitian(7, rng)
        lo, hi = sorted(rng.uniform(0, 1.2, 2))
        p_lo = subspace(a, lo).projector
        p_hi = subspace(a, hi).projector
        assert frobenius(p_hi @ p_lo - p_lo) <= 1e-9


# --- inclusion and identity checks ------------------------------------------


def test_inclusion_shift_examples():
    assert check_inclusion_shift(np.diag([1.0, 2.0]), 0.0, 1.5)
    assert check_inclusion_shift(np.diag([-1.0, 1.0]), 1.0, 0.0)


def test_inclusion_shift_randomized():
    rng = np.random.default_rng(23)
    for trial in range(40):
        d = int(rng.integers(2, 11))
        a = random_hermitian(d, rng, "complex" if trial % 2 else "real")
        delta, eps = rng.uniform(0, 2.0, 2)
        assert check_inclusion_shift(a, float(delta), float(eps))


def test_square_identity_examples():
    assert check_square_identity(np.diag([-2.0, 1.0]), 1.0)
    assert check_square_identity(np.zeros((3, 3)), 0.7)


def test_square_identity_randomized():
    rng = np.random.default_rng(29)
    done = 0
    while done < 40:
        d = int(rng.integers(2, 11))
        a = random_hermitian(d, rng, "complex" if done % 2 else "real")
        mids = gap_midpoints(np.linalg.eigvalsh(a), 2e-6)
        if not mids:
            continue
        eps = mids[int(rng.integers(len(mids)))]
        assert check_square_identity(a, eps)
        done += 1


def test_inverse_inclusion_examples():
    assert check_inverse_inclusion(np.eye(3), 1.5)
    assert check_inverse_inclusion(np.diag([1.0, 4.0]), 2.0)
    with pytest.raises(ValueError):
        check_inverse_inclusion(np.diag([0.5, 2.0]), 1.0)


def test_inverse_inclusion_randomized():
    rng = np.random.default_rng(31)
    done = 0
    while done < 30:
        d = int(rng.integers(2, 9))
        a = random_hermitian(d, rng, eigenvalues=rng.uniform(1.0, 10.0, d))
        eps = float(np.exp(rng.uniform(0.0, np.log(10.0))))
        if np.min(np.abs(np.linalg.eigvalsh(a) - eps)) < 1e-6:
            continue
        assert check_inverse_inclusion(a, eps)
        done += 1


def test_chain_examples():
    assert check_S_chain(np.zeros((2, 2)), 1.0)
    assert check_S_chain(np.diag([1.0]), 1.0)


def test_chain_randomized():
    rng = np.random.default_rng(37)
    for trial in range(30):
        d = int(rng.integers(1, 9))
        a = random_hermitian(d, rng, "complex" if trial % 2 else "real")
        eps = float(rng.uniform(0.05, 4.0))
        assert check_S_chain(a, eps)


def test_strict_lower_examples():
    assert check_strict_lower(np.diag([1.0, 3.0]), 2.0, trials=5, rng=0)
    assert check_strict_lower(np.diag([2.0]), 0.0, trials=5, rng=0)
    with pytest.raises(ValueError):
        check_strict_lower(np.diag([1.0, 2.0]), 5.0)  # empty complement


def test_strict_lower_randomized_psd():
    rng = np.random.default_rng(41)
    done = 0
    while done < 30:
        d = int(rng.integers(2, 10))
        a = random_psd(d, rng, "complex" if done % 2 else "real")
        mids = gap_midpoints(np.linalg.eigvalsh(a), 1e-4)
        if not mids:
            continue
        assert check_strict_lower(a, mids[int(rng.integers(len(mids)))], trials=20, rng=rng)
        done += 1


def test_sandwich_examples():
    assert check_sandwich(np.diag([1.0, 2.0, 3.0]), 1.2, 3.0, trials=10, rng=0)
    with pytest.raises(ValueError):
        check_sandwich(np.diag([1.0, 2.0]), 0.3, 0.5)  # empty shell


def test_sandwich_degenerate_single_vector():
    # equality on both sides when the level pair collapses onto an eigenvalue
    a = np.diag([1.0, 2.0, 3.0])
    x = np.array([0.0, 1.0, 0.0])
    assert sandwich_holds(a, 2.0, 2.0, x)
    # negative eigenvalue enters through its magnitude
    a = np.diag([-2.0, 1.0])
    assert sandwich_holds(a, 2.0, 2.0, np.array([1.0, 0.0]))


def test_sandwich_randomized():
    rng = np.random.default_rng(43)
    done = 0
    while done < 30:
        d = int(rng.integers(3, 11))
        a = random_hermitian(d, rng, "complex" if done % 2 else "real")
        mids = gap_midpoints(np.linalg.eigvalsh(a), 1e-4)
        if len(mids) < 2:
            continue
        i = int(rng.integers(len(mids) - 1))
        assert check_sandwich(a, mids[i], mids[i + 1], trials=15, rng=rng)
        done += 1
