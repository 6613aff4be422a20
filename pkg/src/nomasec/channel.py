"""One-dimensional network layout and channel sampling.

All nodes sit on a line with the base station at the origin. Every link gain
has a deterministic magnitude ``sqrt(l ** -gamma)`` set by the link distance
and an independent phase drawn uniformly on ``[0, 2 pi)``.

Random streams are ``numpy.random.Generator`` objects backed by PCG64, seeded
from ``ScenarioConfig.seed``.
"""

from dataclasses import asdict, dataclass, fields, replace

import numpy as np

from .exceptions import ConfigError, InvalidDistance

MIN_LINK_DISTANCE = 1.0

__all__ = [
    "ChannelRealization",
    "ScenarioConfig",
    "gain_magnitude",
    "power_linear",
    "relay_distances",
    "sample_channel",
    "sample_realizations",
]


def gain_magnitude(l, gamma):
    """Path-loss amplitude ``sqrt(1 / l**gamma)`` of a link of length ``l`` meters."""
    if not l > 0:
        raise InvalidDistance(f"link distance must be positive, got {l}")
    return float(np.sqrt(1.0 / l**gamma))


def power_linear(P_dbm):
    """Convert dBm to linear power on the unit-noise scale (30 dBm -> 1000)."""
    return 10.0 ** (P_dbm / 10.0)


@dataclass(frozen=True)
class ScenarioConfig:
    """Geometry, power budget and Monte Carlo settings of one scenario.

    Distances are measured from the base station in meters. All ``K`` relays
    are taken to sit at the same distance ``lr``.
    """

    l1: float = 30.0
    l2: float = 40.0
    le: float = 50.0
    lr: float = 15.0
    K: int = 5
    gamma: float = 3.5
    P_dbm: float = 30.0
    mc_runs: int = 200
    seed: int = 0

    def diagnostics(self):
        """Every invariant violation as a list of ``"field: message"`` strings."""
        out = []
        for name in ("l1", "l2", "le", "lr"):
            value = getattr(self, name)
            if not _is_real(value) or not value > 0:
                out.append(f"{name}: distance must be a positive number, got {value!r}")
        if not _is_int(self.K) or self.K < 1:
            out.append(f"K: relay count must be an integer >= 1, got {self.K!r}")
        if not _is_real(self.gamma) or not self.gamma > 0:
            out.append(f"gamma: path-loss exponent must be positive, got {self.gamma!r}")
        if not _is_real(self.P_dbm) or not np.isfinite(self.P_dbm):
            out.append(f"P_dbm: must be a finite number, got {self.P_dbm!r}")
        if not _is_int(self.mc_runs) or self.mc_runs < 1:
            out.append(f"mc_runs: must be an integer >= 1, got {self.mc_runs!r}")
        if not _is_int(self.seed) or not 0 <= self.seed < 2**64:
            out.append(f"seed: must be an unsigned 64-bit integer, got {self.seed!r}")
        if _is_real(self.l1) and _is_real(self.l2) and not self.l1 < self.l2:
            out.append(f"l1: strong user must be closer than weak user (l1 < l2), got l1={self.l1}, l2={self.l2}")
        return out

    def validate(self):
        diags = self.diagnostics()
        if diags:
            raise ConfigError(diags)
        return self

    @property
    def P(self):
        """Total power on the linear, noise-normalized scale."""
        return power_linear(self.P_dbm)

    def replace(self, **changes):
        return replace(self, **changes)

    def to_dict(self):
        return asdict(self)

    @classmethod
    def field_names(cls):
        return [f.name for f in fields(cls)]


def _is_real(x):
    return isinstance(x, (int, float, np.integer, np.floating)) and not isinstance(x, bool)


def _is_int(x):
    return isinstance(x, (int, np.integer)) and not isinstance(x, bool)


def relay_distances(cfg):
    """Relay-to-node distances ``(to user 1, to user 2, to eavesdropper)``.

    Nodes are collinear with the base station, so each distance is
    ``|l_node - lr|``, floored at one meter.
    """
    return tuple(max(abs(l - cfg.lr), MIN_LINK_DISTANCE) for l in (cfg.l1, cfg.l2, cfg.le))


@dataclass(frozen=True)
class ChannelRealization:
    """Complex channel gains for one drop.

    ``h1, h2, he`` are the base-station links to the strong user, weak user
    and eavesdropper; ``h_r`` the base-station-to-relay links; ``g1, g2, ge``
    the relay-to-node links (length ``K`` each).
    """

    h1: complex
    h2: complex
    he: complex
    h_r: np.ndarray
    g1: np.ndarray
    g2: np.ndarray
    ge: np.ndarray

    @property
    def K(self):
        return len(self.h_r)


def sample_channel(cfg, rng):
    """Draw one :class:`ChannelRealization` for ``cfg`` from ``rng``.

    Phases are drawn in one block, in the order h1, h2, he, h_r, g1, g2, ge.
    """
    K = cfg.K
    gamma = cfg.gamma
    d1, d2, de = relay_distances(cfg)
    theta = rng.uniform(0.0, 2.0 * np.pi, size=3 + 4 * K)
    ph = np.exp(1j * theta)
    h1 = gain_magnitude(cfg.l1, gamma) * ph[0]
    h2 = gain_magnitude(cfg.l2, gamma) * ph[1]
    he = gain_magnitude(cfg.le, gamma) * ph[2]
    relay = ph[3:].reshape(4, K)
    return ChannelRealization(
        h1=complex(h1),
        h2=complex(h2),
        he=complex(he),
        h_r=gain_magnitude(cfg.lr, gamma) * relay[0],
        g1=gain_magnitude(d1, gamma) * relay[1],
        g2=gain_magnitude(d2, gamma) * relay[2],
        ge=gain_magnitude(de, gamma) * relay[3],
    )


def sample_realizations(cfg, n=None):
    """``n`` (default ``cfg.mc_runs``) realizations from a fresh stream seeded by ``cfg.seed``."""
    cfg.validate()
    rng = np.random.default_rng(cfg.seed)
    n = cfg.mc_runs if n is None else n
    return [sample_channel(cfg, rng) for _ in range(n)]
