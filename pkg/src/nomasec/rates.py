"""Closed-form achievable and secrecy rates for the four transmission schemes.

All rates are in bits per channel use. The ``*_terms`` kernels broadcast over
``alpha`` and ``pbar`` so the optimizer can evaluate whole grids with the same
arithmetic the scalar functions use.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidBeam

LN2 = np.log(2.0)
CONSTRAINT_RTOL = 1e-9

__all__ = [
    "DecodingOrder",
    "PowerSplit",
    "Scheme",
    "SecrecyRatePair",
    "af_rates",
    "af_secrecy_rates",
    "cj_secrecy_rates",
    "df_rates",
    "df_relay_rates",
    "df_secrecy_rates",
    "direct_rates",
    "direct_secrecy_rates",
]


class Scheme(str, enum.Enum):
    DIRECT = "direct"
    CJ = "cj"
    DF = "df"
    AF = "af"

    @property
    def min_relays(self):
        return {Scheme.DIRECT: 0, Scheme.CJ: 3, Scheme.DF: 2, Scheme.AF: 2}[self]


class DecodingOrder(enum.IntEnum):
    """Order in which the relays decode the two messages in phase one."""

    STRONG_FIRST = 1
    WEAK_FIRST = 2


@dataclass(frozen=True)
class PowerSplit:
    """Power fraction ``alpha`` of the strong user and BS transmit power ``P_bar``.

    The relays get the remaining ``P - P_bar``.
    """

    alpha: float
    P_bar: float
    P: float

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if not 0.0 <= self.P_bar <= self.P:
            raise ValueError(f"P_bar must lie in [0, P={self.P}], got {self.P_bar}")

    @property
    def relay_power(self):
        return self.P - self.P_bar


@dataclass(frozen=True)
class SecrecyRatePair:
    rs1: float
    rs2: float
    scheme: Scheme
    decoding_order: DecodingOrder | None = None

    def __post_init__(self):
        if self.rs1 < 0 or self.rs2 < 0:
            raise ValueError("secrecy rates are clamped at zero")
        if (self.decoding_order is not None) != (self.scheme is Scheme.DF):
            raise ValueError("decoding_order is set exactly for the DF scheme")

    @property
    def sum(self):
        return self.rs1 + self.rs2


def log2p(x):
    """``log2(1 + x)``, accurate for the small SNRs of long links."""
    return np.log1p(x) / LN2


def pos(x):
    return np.maximum(x, 0.0)


def user_terms(a1, a2, alpha, pbar):
    """Superposition-coded rates of the strong (gain ``a1``) and weak (``a2``) user."""
    r1 = log2p(a1 * alpha * pbar)
    r2 = log2p(a2 * (1.0 - alpha) * pbar / (1.0 + a2 * alpha * pbar))
    return r1, r2


def eve_terms(ae, alpha, pbar, jam=0.0):
    """Eavesdropper rates on both messages, with extra interference power ``jam``."""
    e1 = log2p(ae * alpha * pbar / (1.0 + jam))
    e2 = log2p(ae * (1.0 - alpha) * pbar / (1.0 + ae * alpha * pbar + jam))
    return e1, e2


def secrecy_terms(a1, a2, ae, alpha, pbar, jam=0.0):
    """Single-phase secrecy rates; ``jam = 0`` is direct transmission."""
    r1, r2 = user_terms(a1, a2, alpha, pbar)
    e1, e2 = eve_terms(ae, alpha, pbar, jam)
    return pos(r1 - e1), pos(r2 - e2)


def relay_decoding_terms(order, x, alpha, pbar):
    """Phase-one rate pair decodable at a relay of channel power ``x``."""
    if DecodingOrder(order) is DecodingOrder.STRONG_FIRST:
        R1 = log2p(x * alpha * pbar / (1.0 + x * (1.0 - alpha) * pbar))
        R2 = log2p(x * (1.0 - alpha) * pbar)
    else:
        R1 = log2p(x * alpha * pbar)
        R2 = log2p(x * (1.0 - alpha) * pbar / (1.0 + x * alpha * pbar))
    return R1, R2


def df_terms(order, a1, a2, x_min, c1, c2, alpha, pbar, P):
    """DF end-to-end rates.

    ``x_min`` is the weakest BS-to-relay channel power (relay decoding rates
    are increasing in it, so it sets the bottleneck) and ``c1, c2`` are
    ``|g_j^H d|^2``.
    """
    q = P - pbar
    r1, r2 = user_terms(a1, a2, alpha, pbar)
    t1 = r1 + log2p(c1 * alpha * q)
    t2 = r2 + log2p(c2 * (1.0 - alpha) * q / (1.0 + c2 * alpha * q))
    R1, R2 = relay_decoding_terms(order, x_min, alpha, pbar)
    return np.minimum(t1, R1), np.minimum(t2, R2)


def af_terms(a1, a2, s1, n1, s2, n2, alpha, pbar):
    """AF end-to-end rates.

    ``s_j = a^H G_{j,r} a`` is the relayed signal gain and ``n_j = a^H G_j a``
    the forwarded relay noise gain for user ``j``.
    """
    snr1 = a1 * alpha * pbar + s1 / (1.0 + n1) * alpha * pbar
    sinr2 = a2 * (1.0 - alpha) * pbar / (1.0 + a2 * alpha * pbar) + s2 * (1.0 - alpha) * pbar / (
        1.0 + n2 + s2 * alpha * pbar
    )
    return log2p(snr1), log2p(sinr2)


def two_phase_secrecy(r1, r2, ae, alpha, pbar):
    """Half-duplex secrecy rates when the eavesdropper only hears phase one."""
    e1, e2 = eve_terms(ae, alpha, pbar)
    return 0.5 * pos(r1 - e1), 0.5 * pos(r2 - e2)


def _vec(beam):
    return np.asarray(getattr(beam, "v", beam), dtype=complex)


def _pair(rs1, rs2, scheme, order=None):
    return SecrecyRatePair(float(rs1), float(rs2), scheme, order)


def direct_rates(ps, ch):
    """Rates ``(r1, r2)`` of plain superposition coding at BS power ``ps.P_bar``.

    Direct transmission uses the whole budget, so callers pass ``P_bar == P``.
    """
    r1, r2 = user_terms(abs(ch.h1) ** 2, abs(ch.h2) ** 2, ps.alpha, ps.P_bar)
    return float(r1), float(r2)


def direct_secrecy_rates(ps, ch):
    rs1, rs2 = secrecy_terms(abs(ch.h1) ** 2, abs(ch.h2) ** 2, abs(ch.he) ** 2, ps.alpha, ps.P_bar)
    return _pair(rs1, rs2, Scheme.DIRECT)


def cj_secrecy_rates(ps, ch, J):
    """Secrecy rates with the relays jamming through beam ``J``.

    ``J`` must be nulled at both users and carry exactly the relay power.

    Raises
    ------
    InvalidBeam
    """
    J = _vec(J)
    G = np.stack([ch.g1, ch.g2], axis=1)
    budget = ps.relay_power
    jn = np.linalg.norm(J)
    if np.linalg.norm(G.conj().T @ J) > CONSTRAINT_RTOL * np.linalg.norm(G) * jn:
        raise InvalidBeam("jamming beam leaks into the legitimate users (G^H J != 0)")
    if abs(jn**2 - budget) > CONSTRAINT_RTOL * budget:
        raise InvalidBeam(f"jamming beam power {jn**2} differs from relay budget {budget}")
    jam = abs(np.vdot(ch.ge, J)) ** 2
    rs1, rs2 = secrecy_terms(abs(ch.h1) ** 2, abs(ch.h2) ** 2, abs(ch.he) ** 2, ps.alpha, ps.P_bar, jam)
    return _pair(rs1, rs2, Scheme.CJ)


def df_relay_rates(order, ps, h_rk):
    """Rate pair ``(R_k1, R_k2)`` that relay ``k`` decodes under ``order``."""
    R1, R2 = relay_decoding_terms(order, abs(h_rk) ** 2, ps.alpha, ps.P_bar)
    return float(R1), float(R2)


def _check_df_beam(d, ch, null=True):
    if abs(np.linalg.norm(d) - 1.0) > CONSTRAINT_RTOL:
        raise InvalidBeam(f"DF beam must have unit norm, got {np.linalg.norm(d)}")
    if null and abs(np.vdot(ch.ge, d)) > CONSTRAINT_RTOL * np.linalg.norm(ch.ge):
        raise InvalidBeam("DF beam is not orthogonal to the eavesdropper channel")


def df_rates(order, ps, ch, d):
    """End-to-end DF rates ``(r1, r2)`` for decoding order ``order`` and unit beam ``d``."""
    d = _vec(d)
    _check_df_beam(d, ch, null=False)
    pairs = [df_relay_rates(order, ps, h) for h in ch.h_r]
    R1 = min(p[0] for p in pairs)
    R2 = min(p[1] for p in pairs)
    a1, a2 = abs(ch.h1) ** 2, abs(ch.h2) ** 2
    c1, c2 = abs(np.vdot(ch.g1, d)) ** 2, abs(np.vdot(ch.g2, d)) ** 2
    q = ps.relay_power
    r1, r2 = user_terms(a1, a2, ps.alpha, ps.P_bar)
    t1 = r1 + log2p(c1 * ps.alpha * q)
    t2 = r2 + log2p(c2 * (1.0 - ps.alpha) * q / (1.0 + c2 * ps.alpha * q))
    return float(min(t1, R1)), float(min(t2, R2))


def df_secrecy_rates(order, ps, ch, d):
    d = _vec(d)
    _check_df_beam(d, ch)
    r1, r2 = df_rates(order, ps, ch, d)
    rs1, rs2 = two_phase_secrecy(r1, r2, abs(ch.he) ** 2, ps.alpha, ps.P_bar)
    return _pair(rs1, rs2, Scheme.DF, DecodingOrder(order))


def af_gains(ch, a):
    """``(s1, n1, s2, n2)`` quadratic forms of the AF gain vector ``a``."""
    a = _vec(a)
    s1 = abs(np.sum(ch.h_r * np.conj(ch.g1) * a)) ** 2
    s2 = abs(np.sum(ch.h_r * np.conj(ch.g2) * a)) ** 2
    n1 = float(np.sum(abs(ch.g1) ** 2 * abs(a) ** 2))
    n2 = float(np.sum(abs(ch.g2) ** 2 * abs(a) ** 2))
    return s1, n1, s2, n2


def af_rates(ps, ch, a):
    """End-to-end AF rates ``(r1, r2)``; each user combines both phases as a SIMO receiver."""
    s1, n1, s2, n2 = af_gains(ch, a)
    r1, r2 = af_terms(abs(ch.h1) ** 2, abs(ch.h2) ** 2, s1, n1, s2, n2, ps.alpha, ps.P_bar)
    return float(r1), float(r2)


def af_secrecy_rates(ps, ch, a):
    a = _vec(a)
    w = np.conj(ch.h_r) * ch.ge
    if abs(np.vdot(w, a)) > CONSTRAINT_RTOL * np.linalg.norm(a) * np.linalg.norm(w):
        raise InvalidBeam("AF beam is not nulled at the eavesdropper (ge^H diag(h_r) a != 0)")
    r1, r2 = af_rates(ps, ch, a)
    rs1, rs2 = two_phase_secrecy(r1, r2, abs(ch.he) ** 2, ps.alpha, ps.P_bar)
    return _pair(rs1, rs2, Scheme.AF)
