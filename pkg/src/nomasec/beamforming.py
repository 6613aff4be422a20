"""Secure relay beamformers for cooperative jamming, DF and AF.

Each design nulls the relays' second-phase (or jamming) signal in a chosen
direction and spends the remaining degrees of freedom on the legitimate
users or against the eavesdropper.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateChannel, TooFewRelays, ZeroRelayPower
from .linalg import complement_basis, gen_eig_leading, herm_eig_leading, orth_projector, phase_normalize

ZERO_POWER = 1e-12
DEGENERATE_RTOL = 1e-12

__all__ = [
    "BeamRole",
    "BeamVector",
    "af_beam",
    "af_beam_batch",
    "af_null_direction",
    "cj_beam",
    "cj_jamming_gain",
    "df_beam",
]


class BeamRole(str, enum.Enum):
    JAM = "jam"
    DF_WEIGHT = "df_weight"
    AF_GAIN = "af_gain"


@dataclass(frozen=True)
class BeamVector:
    """A relay beam and the power it was designed for.

    ``designed_power`` is ``||v||^2`` for jamming, ``1`` for DF weights and
    ``v^H A v`` for AF gains. ``degenerate`` marks designs whose null space
    leaves no freedom to trade between the two users.
    """

    role: BeamRole
    v: np.ndarray
    designed_power: float
    degenerate: bool = False

    def __len__(self):
        return len(self.v)


def _need_relays(K, required, scheme):
    if K < required:
        raise TooFewRelays(scheme, required, K)


def cj_jamming_gain(g1, g2, ge):
    """``ge^H P_perp([g1 g2]) ge``: jamming power reaching the eavesdropper per unit relay power."""
    P = orth_projector(np.stack([g1, g2], axis=1))
    return float(np.real(np.vdot(ge, P @ ge)))


def cj_beam(g1, g2, ge, relay_power):
    """Jamming beam of power ``relay_power`` nulled at both users.

    Among all beams with ``[g1 g2]^H J = 0`` and ``||J||^2 = relay_power``
    this one maximizes the jamming power ``|ge^H J|^2`` at the eavesdropper.

    Raises
    ------
    TooFewRelays
        If ``K < 3``.
    DegenerateChannel
        If ``ge`` lies in the span of ``g1`` and ``g2``.
    """
    ge = np.asarray(ge, dtype=complex)
    K = len(ge)
    _need_relays(K, 3, "cooperative jamming")
    if relay_power < 0:
        raise ValueError(f"relay power must be nonnegative, got {relay_power}")
    P = orth_projector(np.stack([g1, g2], axis=1))
    pg = P @ ge
    norm = np.linalg.norm(pg)
    if norm < DEGENERATE_RTOL * max(np.linalg.norm(ge), np.finfo(float).tiny):
        raise DegenerateChannel("eavesdropper channel lies in the span of the user channels")
    if relay_power == 0:
        return BeamVector(BeamRole.JAM, np.zeros(K, dtype=complex), 0.0)
    J = phase_normalize(pg / norm) * np.sqrt(relay_power)
    return BeamVector(BeamRole.JAM, J, float(relay_power))


def df_beam(g1, g2, ge, beta):
    """Unit-norm DF beam orthogonal to ``ge``.

    Maximizes ``beta |g1^H d|^2 + (1 - beta) |g2^H d|^2`` over unit ``d``
    with ``ge^H d = 0``, via the leading eigenvector of the projected
    weighted Gram matrix. With ``K = 2`` the null space is one-dimensional
    and the result is flagged ``degenerate``.
    """
    ge = np.asarray(ge, dtype=complex)
    g1 = np.asarray(g1, dtype=complex)
    g2 = np.asarray(g2, dtype=complex)
    K = len(ge)
    _need_relays(K, 2, "decode-and-forward")
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must lie in [0, 1], got {beta}")
    Pe = orth_projector(ge)
    M = Pe @ (beta * np.outer(g1, g1.conj()) + (1.0 - beta) * np.outer(g2, g2.conj())) @ Pe
    _, u = herm_eig_leading(0.5 * (M + M.conj().T))
    d = Pe @ u
    norm = np.linalg.norm(d)
    if norm < DEGENERATE_RTOL:
        raise DegenerateChannel("leading direction is parallel to the eavesdropper channel")
    return BeamVector(BeamRole.DF_WEIGHT, phase_normalize(d / norm), 1.0, degenerate=K == 2)


def af_null_direction(h_r, ge):
    """Vector the AF gains must be orthogonal to: ``diag(conj(h_r)) ge``."""
    return np.conj(np.asarray(h_r, dtype=complex)) * np.asarray(ge, dtype=complex)


def _combine(a1, a2, Adiag, beta, q, objective):
    if beta == 1.0:
        return a1
    if beta == 0.0:
        return a2
    z = np.vdot(a1, Adiag * a2)
    if abs(z) > 0:
        a2 = a2 * (np.conj(z) / abs(z))
    a = beta * a1 + (1.0 - beta) * a2
    power = float(np.real(np.vdot(a, Adiag * a)))
    if np.linalg.norm(a) <= DEGENERATE_RTOL * (np.linalg.norm(a1) + np.linalg.norm(a2)):
        return a1 if objective(a1) >= objective(a2) else a2
    return a * np.sqrt(q / power)


def af_beam(h_r, g1, g2, ge, ps, beta):
    """AF relay gains nulled at the eavesdropper, meeting the relay power budget.

    For each user the optimal gain vector is the leading generalized
    eigenvector of its SINR pencil restricted to the null space of
    ``diag(conj(h_r)) ge``. The two per-user designs are phase aligned,
    combined with weight ``beta`` on the strong user, and rescaled so that
    ``a^H A a = P - P_bar`` with ``A = diag(|h_r|^2) P_bar + I``.

    Raises
    ------
    TooFewRelays
        If ``K < 2``.
    ZeroRelayPower
        If ``P - P_bar <= 1e-12``.
    DegenerateChannel
        If a user's relayed signal vanishes on the null space.
    """
    h_r = np.asarray(h_r, dtype=complex)
    g1 = np.asarray(g1, dtype=complex)
    g2 = np.asarray(g2, dtype=complex)
    K = len(h_r)
    _need_relays(K, 2, "amplify-and-forward")
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must lie in [0, 1], got {beta}")
    q = ps.relay_power
    if q <= ZERO_POWER:
        raise ZeroRelayPower("no relay power left; use direct transmission")
    pbar = ps.P_bar
    w = af_null_direction(h_r, ge)
    F = orth_projector(w)
    Q = complement_basis(w)
    Adiag = np.abs(h_r) ** 2 * pbar + 1.0
    pencils = []
    for j, g in ((1, g1), (2, g2)):
        b = np.conj(h_r) * g
        if np.linalg.norm(Q.conj().T @ b) < DEGENERATE_RTOL * max(np.linalg.norm(b), np.finfo(float).tiny):
            raise DegenerateChannel(f"user {j} receives no relayed signal inside the null space")
        num = np.outer(b, b.conj())
        den = np.diag(Adiag / q + np.abs(g) ** 2)
        if j == 2:
            den = den + num * ps.alpha * pbar
        pencils.append((F @ num @ F, F @ den @ F))
    ends = []
    for num, den in pencils:
        _, u = gen_eig_leading(num, den, basis=Q)
        ends.append(u * np.sqrt(q / np.real(np.vdot(u, Adiag * u))))

    def objective(a):
        vals = [np.real(np.vdot(a, n @ a)) / np.real(np.vdot(a, d @ a)) for n, d in pencils]
        return beta * vals[0] + (1.0 - beta) * vals[1]

    a = phase_normalize(_combine(ends[0], ends[1], Adiag, beta, q, objective))
    return BeamVector(BeamRole.AF_GAIN, a, float(np.real(np.vdot(a, Adiag * a))), degenerate=K == 2)


def af_beam_batch(ch, pbars, P, beta):
    """Closed-form AF gains for many BS powers at once, one row per entry of ``pbars``.

    Each per-user pencil has a rank-one numerator ``b b^H`` and a diagonal
    denominator ``D`` (the weak user's extra ``G_{2,r}`` term does not move
    the maximizer), so on the null space of ``w`` the leading direction is
    ``D^{-1} b - D^{-1} w (w^H D^{-1} b) / (w^H D^{-1} w)``. Rows with no
    relay power are zero. Agrees with :func:`af_beam` up to rounding.
    """
    pbars = np.atleast_1d(np.asarray(pbars, dtype=float))
    K = ch.K
    _need_relays(K, 2, "amplify-and-forward")
    out = np.zeros((len(pbars), K), dtype=complex)
    q = P - pbars
    live = q > ZERO_POWER
    if not np.any(live):
        return out
    q = q[live][:, None]
    p = pbars[live][:, None]
    hr2 = np.abs(ch.h_r) ** 2
    Adiag = hr2 * p + 1.0
    w = af_null_direction(ch.h_r, ch.ge)
    ends = []
    for g in (ch.g1, ch.g2):
        b = np.conj(ch.h_r) * g
        Dinv = 1.0 / (Adiag / q + np.abs(g) ** 2)
        lam = np.sum(np.conj(w) * Dinv * b, axis=1, keepdims=True) / np.sum(
            np.abs(w) ** 2 * Dinv, axis=1, keepdims=True
        )
        v = Dinv * (b - lam * w)
        v = v * np.sqrt(q / np.sum(Adiag * np.abs(v) ** 2, axis=1, keepdims=True))
        ends.append(v)
    a1, a2 = ends
    if beta == 1.0:
        a = a1
    elif beta == 0.0:
        a = a2
    else:
        z = np.sum(np.conj(a1) * Adiag * a2, axis=1, keepdims=True)
        mag = np.abs(z)
        rot = np.where(mag > 0, np.conj(z) / np.where(mag > 0, mag, 1.0), 1.0)
        a = beta * a1 + (1.0 - beta) * a2 * rot
        a = a * np.sqrt(q / np.sum(Adiag * np.abs(a) ** 2, axis=1, keepdims=True))
    first = np.argmax(np.abs(a) > 1e-12, axis=1)
    lead = a[np.arange(len(a)), first][:, None]
    a = a * np.where(np.abs(lead) > 0, np.conj(lead) / np.where(np.abs(lead) > 0, np.abs(lead), 1.0), 1.0)
    out[live] = a
    return out
