import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nomasec.exceptions import NotHermitian, NotPositiveDefinite, RankDeficient
from nomasec.linalg import complement_basis, gen_eig_leading, herm_eig_leading, orth_projector, phase_normalize

from conftest import random_complex


def rayleigh(M, u):
    return np.real(np.vdot(u, M @ u)) / np.real(np.vdot(u, u))


def test_projector_of_axis():
    e1 = np.array([1.0, 0.0, 0.0])
    np.testing.assert_allclose(orth_projector(e1), np.diag([0.0, 1.0, 1.0]), atol=1e-15)


def test_projector_kills_column_span(rng):
    G = random_complex(rng, 6, 2)
    v = G @ np.array([0.3 - 1j, 2.0 + 0.5j])
    assert np.linalg.norm(orth_projector(G) @ v) < 1e-10


def test_projector_unit_magnitude_entries(rng):
    G = np.exp(1j * rng.uniform(0, 2 * np.pi, (5, 2)))
    P = orth_projector(G)
    assert np.linalg.norm(P @ P - P) < 1e-10
    assert np.linalg.norm(P @ G) < 1e-10
    assert np.linalg.norm(P - P.conj().T) < 1e-12


def test_projector_rank_deficient():
    g = np.array([1.0, 1j, 2.0])
    with pytest.raises(RankDeficient):
        orth_projector(np.stack([g, 2 * g], axis=1))


def test_projector_needs_fewer_columns_than_rows(rng):
    with pytest.raises(ValueError):
        orth_projector(random_complex(rng, 3, 3))


@settings(max_examples=50, deadline=None)
@given(K=st.integers(2, 8), m=st.integers(1, 3), seed=st.integers(0, 2**32 - 1))
def test_projector_properties(K, m, seed):
    if m >= K:
        m = K - 1
    G = random_complex(np.random.default_rng(seed), K, m)
    P = orth_projector(G)
    assert np.linalg.norm(P - P.conj().T) < 1e-10
    assert np.linalg.norm(P @ P - P) < 1e-10
    assert np.linalg.norm(P @ G) < 1e-10 * np.linalg.norm(G)


def test_complement_basis_orthonormal(rng):
    w = random_complex(rng, 5)
    Q = complement_basis(w)
    assert Q.shape == (5, 4)
    np.testing.assert_allclose(Q.conj().T @ Q, np.eye(4), atol=1e-12)
    assert np.linalg.norm(Q.conj().T @ w) < 1e-12


def test_herm_identity():
    lam, v = herm_eig_leading(np.eye(3))
    assert lam == pytest.approx(1.0)
    assert np.linalg.norm(v) == pytest.approx(1.0)
    first = v[np.flatnonzero(np.abs(v) > 1e-12)[0]]
    assert first.imag == 0 and first.real > 0


def test_herm_diagonal():
    lam, v = herm_eig_leading(np.diag([3.0, 1.0]))
    assert lam == pytest.approx(3.0)
    np.testing.assert_allclose(v, [1.0, 0.0], atol=1e-14)


def test_herm_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        herm_eig_leading(np.array([[1.0, 2.0], [0.0, 1.0]]))


def test_herm_rayleigh_probes(rng):
    B = random_complex(rng, 5, 5)
    M = B.conj().T @ B
    lam, v = herm_eig_leading(M)
    assert np.linalg.norm(M @ v - lam * v) < 1e-8 * np.linalg.norm(M)
    probes = random_complex(rng, 1000, 5)
    q = np.real(np.einsum("ij,jk,ik->i", probes.conj(), M, probes)) / np.sum(np.abs(probes) ** 2, axis=1)
    assert np.all(q <= lam + 1e-9 * lam)


def test_herm_deterministic(rng):
    B = random_complex(rng, 4, 4)
    M = B.conj().T @ B
    v1 = herm_eig_leading(M)[1]
    v2 = herm_eig_leading(M.copy())[1]
    np.testing.assert_allclose(v1, v2, atol=1e-12)


def test_gen_identity_matches_herm(rng):
    B = random_complex(rng, 4, 4)
    A = B.conj().T @ B
    lam_g, v_g = gen_eig_leading(A, np.eye(4))
    lam_h, v_h = herm_eig_leading(A)
    assert abs(lam_g - lam_h) < 1e-9 * lam_h
    np.testing.assert_allclose(v_g, v_h, atol=1e-9)


def test_gen_diagonal_pencil():
    lam, v = gen_eig_leading(np.diag([2.0, 0.0]), np.eye(2))
    assert lam == pytest.approx(2.0)
    np.testing.assert_allclose(np.abs(v), [1.0, 0.0], atol=1e-14)


def test_gen_rayleigh_probes(rng):
    X = random_complex(rng, 5, 5)
    Y = random_complex(rng, 5, 5)
    A = X.conj().T @ X
    B = Y.conj().T @ Y + 0.1 * np.eye(5)
    lam, v = gen_eig_leading(A, B)
    assert np.linalg.norm(A @ v - lam * B @ v) < 1e-8 * (np.linalg.norm(A) + lam * np.linalg.norm(B))
    assert np.real(np.vdot(v, B @ v)) == pytest.approx(1.0)
    probes = random_complex(rng, 1000, 5)
    num = np.real(np.einsum("ij,jk,ik->i", probes.conj(), A, probes))
    den = np.real(np.einsum("ij,jk,ik->i", probes.conj(), B, probes))
    assert np.all(num / den <= lam * (1 + 1e-9))


def test_gen_rejects_indefinite():
    with pytest.raises(NotPositiveDefinite):
        gen_eig_leading(np.eye(2), np.diag([1.0, -1.0]))


def test_gen_singular_b_on_restricted_subspace(rng):
    # B vanishes along w; restricting to the complement of w makes the pencil definite
    w = random_complex(rng, 4)
    F = orth_projector(w)
    X = random_complex(rng, 4, 4)
    A = F @ (X.conj().T @ X) @ F
    B = F @ np.diag([1.0, 2.0, 3.0, 4.0]) @ F
    with pytest.raises(NotPositiveDefinite):
        gen_eig_leading(A, B)
    lam, v = gen_eig_leading(A, B, basis=complement_basis(w))
    assert abs(np.vdot(w, v)) < 1e-12 * np.linalg.norm(w) * np.linalg.norm(v)
    assert np.linalg.norm(A @ v - lam * B @ v) < 1e-8 * (np.linalg.norm(A) + lam * np.linalg.norm(B))


def test_phase_normalize_skips_tiny_leading_entries():
    v = np.array([1e-14, 2j, 1.0])
    out = phase_normalize(v)
    assert out[1] == pytest.approx(2.0)
    assert out[1].imag == 0.0
