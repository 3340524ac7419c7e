import numpy as np
import pytest

from zbtopo import evolve, hermitian_eig, spin_matrices


def random_hermitian(rng, dim):
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return 0.5 * (a + a.conj().T)


@pytest.mark.parametrize("dim", range(2, 9))
def test_projector_invariants_random(dim):
    rng = np.random.default_rng(100 + dim)
    eye = np.eye(dim)
    for _ in range(1000):
        h = random_hermitian(rng, dim)
        dec = hermitian_eig(h)
        total = dec.projectors.sum(axis=0)
        assert np.max(np.abs(total - eye)) < 1e-10
        for i, qi in enumerate(dec.projectors):
            for j, qj in enumerate(dec.projectors):
                expect = qi if i == j else 0.0
                assert np.max(np.abs(qi @ qj - expect)) < 1e-10
        assert np.max(np.abs(dec.reconstruct() - h)) < 1e-10
        assert np.all(np.diff(dec.energies) >= -1e-12)


def test_pauli_z_pattern():
    dec = hermitian_eig(np.diag([1.0, -1.0]))
    assert np.allclose(dec.energies, [-1.0, 1.0])
    assert np.allclose(dec.projectors[0], np.diag([0.0, 1.0]))
    assert np.allclose(dec.projectors[1], np.diag([1.0, 0.0]))


def test_spin1_jz_spectrum():
    jz = spin_matrices(1, "ladder")["Jz"]
    dec = hermitian_eig(jz)
    assert np.allclose(dec.energies, [-1.0, 0.0, 1.0])


def test_random_5x5_reconstruction_seed42():
    rng = np.random.default_rng(42)
    h = random_hermitian(rng, 5)
    dec = hermitian_eig(h)
    assert np.linalg.norm(dec.reconstruct() - h) < 1e-10


def test_degenerate_levels_grouped():
    u = np.linalg.qr(np.random.default_rng(5).standard_normal((4, 4))
                     + 1j * np.random.default_rng(6).standard_normal((4, 4)))[0]
    h = u @ np.diag([1.0, 1.0, 2.0, 3.0]) @ u.conj().T
    dec = hermitian_eig(h)
    assert dec.group_sizes == (2, 1, 1)
    assert len(dec.levels) == 3
    # rank-2 projector of the degenerate pair
    assert abs(np.trace(dec.projectors[0]).real - 2.0) < 1e-10


def test_phase_convention_deterministic():
    rng = np.random.default_rng(9)
    h = random_hermitian(rng, 6)
    a = hermitian_eig(h)
    b = hermitian_eig(h.copy())
    assert np.array_equal(a.states, b.states)
    for col in a.states.T:
        pivot = col[np.argmax(np.abs(col))]
        assert pivot.real > 0 and abs(pivot.imag) < 1e-12


def test_non_hermitian_rejected_with_norm():
    bad = np.array([[0.0, 1.0], [0.0, 0.0]])
    with pytest.raises(ValueError, match="not Hermitian"):
        hermitian_eig(bad)


@pytest.mark.parametrize("dim", [1, 9])
def test_dimension_range_enforced(dim):
    with pytest.raises(ValueError, match="dimension"):
        hermitian_eig(np.eye(dim))


def test_eigenvalues_invariant_under_unitary_conjugation():
    rng = np.random.default_rng(77)
    for dim in range(2, 9):
        for _ in range(50):
            h = random_hermitian(rng, dim)
            q, _ = np.linalg.qr(rng.standard_normal((dim, dim))
                                + 1j * rng.standard_normal((dim, dim)))
            w1 = hermitian_eig(h).energies
            w2 = hermitian_eig(q @ h @ q.conj().T).energies
            assert np.max(np.abs(w1 - w2)) < 1e-9


def test_evolve_t0_identity_and_norm():
    rng = np.random.default_rng(2)
    h = random_hermitian(rng, 4)
    psi = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    psi /= np.linalg.norm(psi)
    assert np.allclose(evolve(h, psi, 0.0), psi, atol=1e-12)
    out = evolve(h, psi, 3.7)
    assert abs(np.linalg.norm(out) - 1.0) < 1e-10


def test_evolve_stationary_state_phase():
    jz = spin_matrices(1, "cartesian")["Jz"]
    phi_plus = np.array([1.0, 1.0j, 0.0]) / np.sqrt(2.0)
    out = evolve(jz, phi_plus, 1.0)
    assert np.allclose(out, np.exp(-1j) * phi_plus, atol=1e-12)


def test_evolve_spin_half_flip():
    # H = m Jz at p = 0; (1,1)/sqrt2 flips to (1,-1)/sqrt2 (up to phase) at t = pi/m
    m = 1.4
    h = m * spin_matrices(0.5)["Jz"]
    psi = np.array([1.0, 1.0]) / np.sqrt(2.0)
    out = evolve(h, psi, np.pi / m)
    flipped = np.array([1.0, -1.0]) / np.sqrt(2.0)
    assert abs(abs(np.vdot(flipped, out)) - 1.0) < 1e-10


def test_evolve_composition():
    rng = np.random.default_rng(8)
    for _ in range(100):
        h = random_hermitian(rng, 5)
        psi = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        psi /= np.linalg.norm(psi)
        t1, t2 = rng.uniform(-3, 3, 2)
        step = evolve(h, evolve(h, psi, t1), t2)
        direct = evolve(h, psi, t1 + t2)
        assert np.max(np.abs(step - direct)) < 1e-10


def test_evolve_rejects_unnormalized():
    with pytest.raises(ValueError, match="not normalized"):
        evolve(np.eye(2), np.array([1.0, 1.0]), 0.5)
