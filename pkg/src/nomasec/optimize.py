"""Weighted-sum secrecy rate maximization and Monte Carlo region tracing.

For a weight ``mu`` the boundary point of a scheme's secrecy rate region
maximizes ``mu * rs1 + (1 - mu) * rs2`` over the power fraction ``alpha``
and the BS power ``P_bar``. The search is a dense grid followed by passes
on a window ten times narrower around the incumbent. DF additionally picks
the better of the two relay decoding orders. Beam designs use ``beta = mu``.
"""

import enum
from dataclasses import dataclass, field

import numpy as np

from . import rates as R
from .beamforming import af_beam_batch, cj_jamming_gain, df_beam
from .channel import sample_realizations
from .exceptions import ConfigError, SecrecyError, TooFewRelays
from .rates import DecodingOrder, PowerSplit, Scheme, SecrecyRatePair

__all__ = [
    "OperatingPoint",
    "RegionPoint",
    "SearchConfig",
    "Sweep",
    "SumRateRow",
    "evaluate_grid",
    "optimize_point",
    "sum_rate_experiment",
    "trace_region",
]

DEFAULT_MU_GRID = tuple(i / 10 for i in range(11))


@dataclass(frozen=True)
class SearchConfig:
    alpha_grid: int = 101
    pbar_grid: int = 101
    refine_passes: int = 2
    mu_grid: tuple = DEFAULT_MU_GRID

    def diagnostics(self):
        out = []
        for name in ("alpha_grid", "pbar_grid"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or isinstance(v, bool) or v < 2:
                out.append(f"{name}: must be an integer >= 2, got {v!r}")
        rp = self.refine_passes
        if not isinstance(rp, (int, np.integer)) or isinstance(rp, bool) or rp < 0:
            out.append(f"refine_passes: must be an integer >= 0, got {rp!r}")
        try:
            mus = list(self.mu_grid)
        except TypeError:
            return out + [f"mu_grid: must be a list of numbers, got {self.mu_grid!r}"]
        if not mus:
            out.append("mu_grid: must contain at least one value")
        for i, mu in enumerate(mus):
            if not isinstance(mu, (int, float)) or isinstance(mu, bool) or not 0.0 <= mu <= 1.0:
                out.append(f"mu_grid[{i}]: weight must lie in [0, 1], got {mu!r}")
        return out

    def validate(self):
        diags = self.diagnostics()
        if diags:
            raise ConfigError(diags)
        return self


@dataclass(frozen=True)
class OperatingPoint:
    scheme: Scheme
    mu: float
    alpha_star: float
    pbar_star: float
    decoding_order: DecodingOrder | None
    rates: SecrecyRatePair
    objective: float


@dataclass(frozen=True)
class RegionPoint:
    mu: float
    mean_rs1: float
    mean_rs2: float
    mean_sum: float
    stderr_sum: float
    n_runs: int

    def __iter__(self):
        # unpacks as (mu, mean_rs1, mean_rs2)
        return iter((self.mu, self.mean_rs1, self.mean_rs2))


class Sweep(str, enum.Enum):
    RELAY_COUNT = "relay_count"
    RELAY_DISTANCE = "relay_distance"


@dataclass(frozen=True)
class SumRateRow:
    scheme: Scheme
    sweep_value: float
    mean_rs1: float
    mean_rs2: float
    mean_sum: float
    stderr_sum: float
    n_runs: int
    error: str = field(default="")


def check_relays(scheme, K):
    scheme = Scheme(scheme)
    if K < scheme.min_relays:
        names = {Scheme.CJ: "cooperative jamming", Scheme.DF: "decode-and-forward", Scheme.AF: "amplify-and-forward"}
        raise TooFewRelays(names[scheme], scheme.min_relays, K)


class _Objective:
    """Secrecy rates of one scheme and realization on arbitrary (P_bar, alpha) grids."""

    def __init__(self, scheme, ch, P, mu):
        self.scheme = Scheme(scheme)
        self.ch = ch
        self.P = float(P)
        self.mu = float(mu)
        check_relays(self.scheme, ch.K)
        self.a1 = abs(ch.h1) ** 2
        self.a2 = abs(ch.h2) ** 2
        self.ae = abs(ch.he) ** 2
        if self.scheme is Scheme.CJ:
            self.jam_gain = cj_jamming_gain(ch.g1, ch.g2, ch.ge)
        elif self.scheme is Scheme.DF:
            d = df_beam(ch.g1, ch.g2, ch.ge, self.mu).v
            self.c1 = abs(np.vdot(ch.g1, d)) ** 2
            self.c2 = abs(np.vdot(ch.g2, d)) ** 2
            self.x_min = float(np.min(np.abs(ch.h_r) ** 2))

    def grid(self, alphas, pbars):
        """``(rs1, rs2, order)`` arrays of shape ``(len(pbars), len(alphas))``.

        ``order`` is ``None`` except for DF, where it holds the better
        decoding order per point (order 1 on ties).
        """
        al = np.asarray(alphas, dtype=float)[None, :]
        pb = np.asarray(pbars, dtype=float)[:, None]
        s = self.scheme
        if s is Scheme.DIRECT:
            rs1, rs2 = R.secrecy_terms(self.a1, self.a2, self.ae, al, pb)
        elif s is Scheme.CJ:
            rs1, rs2 = R.secrecy_terms(self.a1, self.a2, self.ae, al, pb, self.jam_gain * (self.P - pb))
        elif s is Scheme.DF:
            best = None
            for order in DecodingOrder:
                r1, r2 = R.df_terms(order, self.a1, self.a2, self.x_min, self.c1, self.c2, al, pb, self.P)
                rs1, rs2 = R.two_phase_secrecy(r1, r2, self.ae, al, pb)
                f = self.mu * rs1 + (1.0 - self.mu) * rs2
                if best is None:
                    best = (rs1, rs2, f, np.full(f.shape, int(order)))
                else:
                    better = f > best[2]
                    best = (
                        np.where(better, rs1, best[0]),
                        np.where(better, rs2, best[1]),
                        np.where(better, f, best[2]),
                        np.where(better, int(order), best[3]),
                    )
            rs1, rs2, _, order = best
            return rs1, rs2, order
        else:
            a = af_beam_batch(self.ch, pb[:, 0], self.P, self.mu)
            ch = self.ch
            s1 = np.abs(a @ (ch.h_r * np.conj(ch.g1))) ** 2
            s2 = np.abs(a @ (ch.h_r * np.conj(ch.g2))) ** 2
            n1 = np.abs(a) ** 2 @ (np.abs(ch.g1) ** 2)
            n2 = np.abs(a) ** 2 @ (np.abs(ch.g2) ** 2)
            r1, r2 = R.af_terms(self.a1, self.a2, s1[:, None], n1[:, None], s2[:, None], n2[:, None], al, pb)
            rs1, rs2 = R.two_phase_secrecy(r1, r2, self.ae, al, pb)
        shape = np.broadcast_shapes(al.shape, pb.shape)
        return np.broadcast_to(rs1, shape), np.broadcast_to(rs2, shape), None


def evaluate_grid(scheme, mu, ch, P, alphas, pbars):
    """Weighted objective of ``scheme`` on the full ``pbars x alphas`` grid.

    Brute-force counterpart of :func:`optimize_point`.
    """
    rs1, rs2, _ = _Objective(scheme, ch, P, mu).grid(alphas, pbars)
    return mu * rs1 + (1.0 - mu) * rs2


def optimize_point(scheme, mu, ch, P, cfg=None):
    """Boundary point of the secrecy rate region of ``scheme`` in direction ``mu``.

    Parameters
    ----------
    scheme : Scheme or str
    mu : float
        Weight of the strong user's secrecy rate, in ``[0, 1]``.
    ch : ChannelRealization
    P : float
        Total linear power.
    cfg : SearchConfig, optional

    Returns
    -------
    OperatingPoint
        Ties in the objective go to the smallest ``P_bar``, then the
        smallest ``alpha``. Direct transmission always uses ``P_bar = P``.
    """
    cfg = (cfg or SearchConfig()).validate()
    if not 0.0 <= mu <= 1.0:
        raise ValueError(f"mu must lie in [0, 1], got {mu}")
    scheme = Scheme(scheme)
    obj = _Objective(scheme, ch, P, mu)
    P = float(P)
    fixed_power = scheme is Scheme.DIRECT
    a_lo, a_hi = 0.0, 1.0
    p_lo, p_hi = (P, P) if fixed_power else (0.0, P)
    a_width, p_width = 1.0, P
    best = None  # (objective, pbar, alpha)
    for _ in range(cfg.refine_passes + 1):
        alphas = np.linspace(a_lo, a_hi, cfg.alpha_grid)
        pbars = np.array([P]) if fixed_power else np.linspace(p_lo, p_hi, cfg.pbar_grid)
        rs1, rs2, _ = obj.grid(alphas, pbars)
        f = mu * rs1 + (1.0 - mu) * rs2
        i, j = np.unravel_index(np.argmax(f), f.shape)
        cand = (float(f[i, j]), float(pbars[i]), float(alphas[j]))
        if best is None or cand[0] > best[0] or (cand[0] == best[0] and cand[1:] < best[1:]):
            best = cand
        a_width /= 10.0
        p_width /= 10.0
        _, pb_c, al_c = best
        a_lo, a_hi = max(0.0, al_c - a_width / 2), min(1.0, al_c + a_width / 2)
        if not fixed_power:
            p_lo, p_hi = max(0.0, pb_c - p_width / 2), min(P, pb_c + p_width / 2)
    _, pbar, alpha = best
    rs1, rs2, order = obj.grid([alpha], [pbar])
    rs1, rs2 = float(rs1[0, 0]), float(rs2[0, 0])
    order = DecodingOrder(int(order[0, 0])) if order is not None else None
    pair = SecrecyRatePair(rs1, rs2, scheme, order)
    return OperatingPoint(scheme, float(mu), alpha, pbar, order, pair, mu * rs1 + (1.0 - mu) * rs2)


def _mean_stats(points):
    rs1 = np.array([p.rates.rs1 for p in points])
    rs2 = np.array([p.rates.rs2 for p in points])
    tot = rs1 + rs2
    n = len(points)
    se = float(np.std(tot, ddof=1) / np.sqrt(n)) if n > 1 else float("nan")
    return float(np.mean(rs1)), float(np.mean(rs2)), float(np.mean(tot)), se, n


def trace_region(scheme, cfg, scfg=None, realizations=None):
    """Mean secrecy rate region boundary of ``scheme`` over Monte Carlo drops.

    Each boundary point optimizes every realization separately and then
    averages. The same realizations are reused for every ``mu``; pass
    ``realizations`` to share them across schemes as well.

    Returns
    -------
    list of RegionPoint
        One per entry of ``scfg.mu_grid``; each unpacks as
        ``(mu, mean_rs1, mean_rs2)``.
    """
    scfg = (scfg or SearchConfig()).validate()
    cfg.validate()
    check_relays(scheme, cfg.K)
    if realizations is None:
        realizations = sample_realizations(cfg)
    out = []
    for mu in scfg.mu_grid:
        pts = [optimize_point(scheme, mu, ch, cfg.P, scfg) for ch in realizations]
        out.append(RegionPoint(float(mu), *_mean_stats(pts)))
    return out


def sum_rate_experiment(schemes, sweep, sweep_values, cfg, scfg=None, mu=0.5):
    """Mean secrecy sum rate per scheme while sweeping relay count or distance.

    Every sweep value redraws ``cfg.mc_runs`` realizations from ``cfg.seed``.
    Scheme precondition failures (e.g. too few relays for jamming) become
    rows with an ``error`` message and no statistics.
    """
    scfg = (scfg or SearchConfig()).validate()
    sweep = Sweep(sweep)
    rows = []
    for value in sweep_values:
        if sweep is Sweep.RELAY_COUNT:
            point_cfg = cfg.replace(K=int(value))
        else:
            point_cfg = cfg.replace(lr=float(value))
        point_cfg.validate()
        realizations = None
        for scheme in schemes:
            scheme = Scheme(scheme)
            try:
                check_relays(scheme, point_cfg.K)
                if realizations is None:
                    realizations = sample_realizations(point_cfg)
                pts = [optimize_point(scheme, mu, ch, point_cfg.P, scfg) for ch in realizations]
            except SecrecyError as exc:
                nan = float("nan")
                rows.append(SumRateRow(scheme, value, nan, nan, nan, nan, 0, str(exc)))
                continue
            rows.append(SumRateRow(scheme, value, *_mean_stats(pts)))
    return rows
