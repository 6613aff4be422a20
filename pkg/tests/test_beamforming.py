import numpy as np
import pytest

from nomasec.beamforming import (
    BeamRole,
    af_beam,
    af_beam_batch,
    af_null_direction,
    cj_beam,
    cj_jamming_gain,
    df_beam,
)
from nomasec.exceptions import DegenerateChannel, TooFewRelays, ZeroRelayPower
from nomasec.linalg import herm_eig_leading, orth_projector
from nomasec.rates import PowerSplit

from conftest import random_complex

P = 1000.0


def null_probes(rng, basis_of, n, K):
    """Random unit vectors orthogonal to the columns of ``basis_of``."""
    Pp = orth_projector(basis_of)
    Z = random_complex(rng, n, K) @ Pp.T
    return Z / np.linalg.norm(Z, axis=1, keepdims=True)


def quad(M, V):
    return np.real(np.einsum("ij,jk,ik->i", V.conj(), M, V))


# cooperative jamming


def test_cj_zero_power():
    g1, g2, ge = np.eye(3, dtype=complex)
    J = cj_beam(g1, g2, ge, 0.0)
    assert J.role is BeamRole.JAM
    assert np.array_equal(J.v, np.zeros(3))


def test_cj_orthogonal_channels():
    g1, g2, ge = np.eye(3, dtype=complex)
    J = cj_beam(g1, g2, ge, 4.0)
    np.testing.assert_allclose(J.v, [0, 0, 2.0], atol=1e-15)
    assert abs(np.vdot(ge, J.v)) ** 2 == pytest.approx(4.0)


def test_cj_needs_three_relays(rng):
    g = random_complex(rng, 3, 2)
    with pytest.raises(TooFewRelays, match="K >= 3"):
        cj_beam(g[0], g[1], g[2], 1.0)


def test_cj_degenerate_eavesdropper(rng):
    g1, g2 = random_complex(rng, 2, 4)
    with pytest.raises(DegenerateChannel):
        cj_beam(g1, g2, 0.3 * g1 - 2j * g2, 1.0)


def test_cj_beats_null_space_probes(realizations, rng):
    for ch in realizations[:5]:
        q = 300.0
        J = cj_beam(ch.g1, ch.g2, ch.ge, q)
        best = abs(np.vdot(ch.ge, J.v)) ** 2
        assert best == pytest.approx(cj_jamming_gain(ch.g1, ch.g2, ch.ge) * q, rel=1e-10)
        probes = null_probes(rng, np.stack([ch.g1, ch.g2], axis=1), 1000, ch.K) * np.sqrt(q)
        assert np.all(np.abs(probes @ ch.ge.conj()) ** 2 <= best * (1 + 1e-9))


# decode-and-forward


def test_df_single_user_endpoints(realization):
    ch = realization
    Pe = orth_projector(ch.ge)
    for beta, g in ((1.0, ch.g1), (0.0, ch.g2)):
        d = df_beam(ch.g1, ch.g2, ch.ge, beta)
        assert abs(np.vdot(g, d.v)) ** 2 == pytest.approx(np.real(np.vdot(g, Pe @ g)), rel=1e-9)


def test_df_beats_constrained_probes(realizations, rng):
    for ch in realizations[:5]:
        for beta in (0.0, 0.3, 0.8):
            d = df_beam(ch.g1, ch.g2, ch.ge, beta).v
            f = lambda V: beta * np.abs(V @ ch.g1.conj()) ** 2 + (1 - beta) * np.abs(V @ ch.g2.conj()) ** 2
            best = f(d[None, :])[0]
            assert np.all(f(null_probes(rng, ch.ge, 1000, ch.K)) <= best * (1 + 1e-9))
            Pe = orth_projector(ch.ge)
            M = Pe @ (beta * np.outer(ch.g1, ch.g1.conj()) + (1 - beta) * np.outer(ch.g2, ch.g2.conj())) @ Pe
            assert best == pytest.approx(herm_eig_leading(M)[0], rel=1e-9)


def test_df_two_relays_flagged(rng):
    g1, g2, ge = random_complex(rng, 3, 2)
    d = df_beam(g1, g2, ge, 0.5)
    assert d.degenerate
    assert abs(np.vdot(ge, d.v)) < 1e-12 * np.linalg.norm(ge)
    with pytest.raises(TooFewRelays):
        df_beam(g1[:1], g2[:1], ge[:1], 0.5)


# amplify-and-forward


def _af_setup(ch, pbar):
    Adiag = np.abs(ch.h_r) ** 2 * pbar + 1.0
    w = af_null_direction(ch.h_r, ch.ge)
    return Adiag, w


def af_sinr_terms(ch, V, ps):
    """Relayed SINR terms of both users for each row of ``V``."""
    s1 = np.abs(V @ (ch.h_r * ch.g1.conj())) ** 2
    s2 = np.abs(V @ (ch.h_r * ch.g2.conj())) ** 2
    n1 = np.abs(V) ** 2 @ np.abs(ch.g1) ** 2
    n2 = np.abs(V) ** 2 @ np.abs(ch.g2) ** 2
    t1 = s1 / (1 + n1) * ps.alpha * ps.P_bar
    t2 = s2 * (1 - ps.alpha) * ps.P_bar / (1 + n2 + s2 * ps.alpha * ps.P_bar)
    return t1, t2


def test_af_endpoint_beta_one(realization):
    ch = realization
    ps = PowerSplit(0.4, 400.0, P)
    a = af_beam(ch.h_r, ch.g1, ch.g2, ch.ge, ps, 1.0)
    Adiag, w = _af_setup(ch, ps.P_bar)
    assert abs(np.vdot(w, a.v)) < 1e-9 * np.linalg.norm(a.v) * np.linalg.norm(w)
    assert a.designed_power == pytest.approx(ps.relay_power, rel=1e-9)


@pytest.mark.parametrize("beta", [0.0, 0.25, 0.5, 1.0])
def test_af_constraints(realizations, beta):
    for ch in realizations[:5]:
        ps = PowerSplit(0.3, 650.0, P)
        a = af_beam(ch.h_r, ch.g1, ch.g2, ch.ge, ps, beta).v
        Adiag, w = _af_setup(ch, ps.P_bar)
        assert abs(np.vdot(w, a)) < 1e-9 * np.linalg.norm(a) * np.linalg.norm(w)
        assert abs(np.real(np.vdot(a, Adiag * a)) - ps.relay_power) < 1e-9 * ps.relay_power


def test_af_per_user_designs_beat_probes(realizations, rng):
    for ch in realizations[:5]:
        ps = PowerSplit(0.35, 500.0, P)
        Adiag, w = _af_setup(ch, ps.P_bar)
        probes = null_probes(rng, w, 1000, ch.K)
        probes *= np.sqrt(ps.relay_power / (np.abs(probes) ** 2 @ Adiag))[:, None]
        p1, p2 = af_sinr_terms(ch, probes, ps)
        for beta, j in ((1.0, 0), (0.0, 1)):
            a = af_beam(ch.h_r, ch.g1, ch.g2, ch.ge, ps, beta).v
            best = af_sinr_terms(ch, a[None, :], ps)[j][0]
            assert np.all((p1, p2)[j] <= best * (1 + 1e-9))


def test_af_zero_relay_power(realization):
    ch = realization
    with pytest.raises(ZeroRelayPower):
        af_beam(ch.h_r, ch.g1, ch.g2, ch.ge, PowerSplit(0.5, P, P), 0.5)
    assert np.array_equal(af_beam_batch(ch, [P], P, 0.5), np.zeros((1, ch.K)))


def test_af_closed_form_matches_eigen_route(realizations):
    for ch in realizations[:5]:
        pbars = np.array([0.0, 10.0, 333.0, 900.0, 999.99])
        for beta in (0.0, 0.4, 1.0):
            batch = af_beam_batch(ch, pbars, P, beta)
            for pbar, row in zip(pbars, batch):
                a = af_beam(ch.h_r, ch.g1, ch.g2, ch.ge, PowerSplit(0.6, pbar, P), beta).v
                assert np.linalg.norm(a - row) < 1e-8 * np.linalg.norm(a)


def test_af_weak_user_design_ignores_alpha(realization):
    ch = realization
    a = af_beam(ch.h_r, ch.g1, ch.g2, ch.ge, PowerSplit(0.1, 500.0, P), 0.0).v
    b = af_beam(ch.h_r, ch.g1, ch.g2, ch.ge, PowerSplit(0.9, 500.0, P), 0.0).v
    assert np.linalg.norm(a - b) < 1e-9 * np.linalg.norm(a)


def test_beams_invariant_to_eavesdropper_scaling(realization):
    ch = realization
    c = 3.0 - 4.0j
    ps = PowerSplit(0.5, 400.0, P)
    np.testing.assert_allclose(cj_beam(ch.g1, ch.g2, c * ch.ge, 600.0).v, cj_beam(ch.g1, ch.g2, ch.ge, 600.0).v,
                               atol=1e-12)
    np.testing.assert_allclose(df_beam(ch.g1, ch.g2, c * ch.ge, 0.5).v, df_beam(ch.g1, ch.g2, ch.ge, 0.5).v,
                               atol=1e-10)
    a = af_beam(ch.h_r, ch.g1, ch.g2, c * ch.ge, ps, 0.5).v
    b = af_beam(ch.h_r, ch.g1, ch.g2, ch.ge, ps, 0.5).v
    assert np.linalg.norm(a - b) < 1e-9 * np.linalg.norm(b)
