"""Dense linear-algebra kernel: tensor products, reduction, eigensolver."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from qinfoflow.linalg import (
    herm_eig,
    kron,
    matrix_log_hermitian,
    partial_trace,
    trace_norm,
)

RNG = np.random.default_rng(20240817)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)


def random_hermitian(dim, rng=RNG):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (a + a.conj().T)


def random_density(dim, rng=RNG):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = a @ a.conj().T
    return m / np.trace(m).real


# ---------------------------------------------------------------- kron


def test_kron_pauli_xy_frozen():
    # antidiagonal blocks of sigma_y scaled by the sigma_x pattern
    expected = np.array(
        [
            [0, 0, 0, -1j],
            [0, 0, 1j, 0],
            [0, -1j, 0, 0],
            [1j, 0, 0, 0],
        ],
        dtype=complex,
    )
    assert np.array_equal(kron(SIGMA_X, SIGMA_Y), expected)


@settings(max_examples=50, deadline=None)
@given(
    a=arrays(np.float64, (2, 2), elements=st.floats(-5, 5)),
    b=arrays(np.float64, (2, 2), elements=st.floats(-5, 5)),
    c=arrays(np.float64, (2, 2), elements=st.floats(-5, 5)),
)
def test_kron_associative(a, b, c):
    left = kron(kron(a, b), c)
    right = kron(a, kron(b, c))
    assert np.allclose(left, right, atol=1e-12)


# ------------------------------------------------------- partial trace


def test_partial_trace_undoes_kron():
    for _ in range(100):
        rho = random_density(2)
        omega = random_density(2)
        joint = kron(rho, omega)
        sys_part = partial_trace(joint, (2, 2), traced="environment")
        env_part = partial_trace(joint, (2, 2), traced="system")
        assert np.abs(sys_part - rho).max() <= 1e-14
        assert np.abs(env_part - omega).max() <= 1e-14


def test_partial_trace_preserves_trace():
    m = random_hermitian(6)
    for traced in ("system", "environment"):
        red = partial_trace(m, (2, 3), traced=traced)
        assert abs(np.trace(red) - np.trace(m)) <= 1e-12


def test_partial_trace_shape_mismatch():
    with pytest.raises(ValueError, match="incompatible factorization"):
        partial_trace(np.eye(6), (2, 2), traced="system")


def test_partial_trace_bad_label():
    with pytest.raises(ValueError):
        partial_trace(np.eye(4), (2, 2), traced="both")


# ---------------------------------------------------------- herm_eig


def test_herm_eig_sigma_x():
    res = herm_eig(SIGMA_X)
    assert np.allclose(res.values, [1.0, -1.0], atol=1e-14)
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    assert np.allclose(np.abs(res.vectors), inv_sqrt2, atol=1e-12)
    # phase fix: first nonzero component of each eigenvector is real positive
    assert res.vectors[0, 0].real > 0 and abs(res.vectors[0, 0].imag) <= 1e-12
    assert res.vectors[0, 1].real > 0 and abs(res.vectors[0, 1].imag) <= 1e-12


def test_herm_eig_reconstruction_random():
    for dim in (2, 4):
        for _ in range(100):
            h = random_hermitian(dim)
            res = herm_eig(h)
            rebuilt = (res.vectors * res.values) @ res.vectors.conj().T
            assert np.abs(rebuilt - h).max() <= 1e-10 * dim
            gram = res.vectors.conj().T @ res.vectors
            assert np.abs(gram - np.eye(dim)).max() <= 1e-10
            assert np.all(np.diff(res.values) <= 1e-14)  # descending


def test_herm_eig_matches_reference_solver():
    for _ in range(50):
        h = random_hermitian(4)
        ours = herm_eig(h).values
        reference = np.linalg.eigvalsh(h)[::-1]
        assert np.abs(ours - reference).max() <= 1e-11


def test_herm_eig_deterministic():
    h = random_hermitian(4)
    a = herm_eig(h)
    b = herm_eig(h)
    assert np.array_equal(a.values, b.values)
    assert np.array_equal(a.vectors, b.vectors)


def test_herm_eig_near_degenerate():
    for eps in (1e-3, 1e-8, 1e-12, 0.0):
        h = np.diag([1.0, 1.0 + eps]).astype(complex)
        h[0, 1] = h[1, 0] = 1e-14
        res = herm_eig(h)
        rebuilt = (res.vectors * res.values) @ res.vectors.conj().T
        assert np.abs(rebuilt - h).max() <= 1e-12


def test_herm_eig_rejects_non_hermitian():
    with pytest.raises(ValueError, match="hermiticity violated"):
        herm_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))


# --------------------------------------------------------- trace norm


def test_trace_norm_frozen_value():
    # generic non-orthogonal state pair difference, spectrum +/-0.20718...
    rho1 = np.array(
        [[0.655, 0.205 - 0.225j], [0.205 + 0.225j, 0.345]], dtype=complex
    )
    rho2 = np.array(
        [[0.730, 0.275 - 0.045j], [0.275 + 0.045j, 0.270]], dtype=complex
    )
    assert abs(trace_norm(rho1 - rho2) - 0.41436698710201325) <= 1e-13


def test_trace_norm_triangle_and_unitary_invariance():
    theta = 0.7321
    u = np.array(
        [[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]],
        dtype=complex,
    )
    for _ in range(50):
        a = random_hermitian(2)
        b = random_hermitian(2)
        assert trace_norm(a + b) <= trace_norm(a) + trace_norm(b) + 1e-12
        assert abs(trace_norm(u @ a @ u.conj().T) - trace_norm(a)) <= 1e-12


def test_trace_norm_general_matrix():
    # non-Hermitian input goes through the singular-value route
    m = np.array([[0.0, 2.0], [0.0, 0.0]], dtype=complex)
    assert abs(trace_norm(m) - 2.0) <= 1e-12


# --------------------------------------------------------- matrix log


def test_matrix_log_roundtrip():
    for _ in range(50):
        rho = random_density(4)
        res = matrix_log_hermitian(rho)
        vals, vecs = np.linalg.eigh(res.matrix)
        rebuilt = (vecs * np.exp(vals)) @ vecs.conj().T
        # exp(log rho) recovers rho on its support
        support = np.eye(4) - res.null_projector
        target = support @ rho @ support
        assert np.abs(support @ rebuilt @ support - target).max() <= 1e-9


def test_matrix_log_rank_deficient():
    rho = np.diag([0.5, 0.5, 0.0, 0.0]).astype(complex)
    res = matrix_log_hermitian(rho)
    assert res.support_rank == 2
    assert abs(np.trace(res.null_projector) - 2.0) <= 1e-12


def test_matrix_log_rejects_negative():
    with pytest.raises(ValueError, match="not PSD"):
        matrix_log_hermitian(np.diag([1.5, -0.5]).astype(complex))
