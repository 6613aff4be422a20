"""Secrecy rate regions for relay-assisted two-user downlink NOMA."""

__version__ = "0.1.0"

from .exceptions import (
    ConfigError,
    DegenerateChannel,
    InvalidBeam,
    InvalidDistance,
    NotHermitian,
    NotPositiveDefinite,
    RankDeficient,
    SecrecyError,
    TooFewRelays,
    ZeroRelayPower,
)
from .channel import (
    ChannelRealization,
    ScenarioConfig,
    gain_magnitude,
    power_linear,
    sample_channel,
    sample_realizations,
)
from .rates import DecodingOrder, PowerSplit, Scheme, SecrecyRatePair
from .beamforming import BeamRole, BeamVector, af_beam, cj_beam, df_beam
from .optimize import (
    OperatingPoint,
    RegionPoint,
    SearchConfig,
    SumRateRow,
    optimize_point,
    sum_rate_experiment,
    trace_region,
)

__all__ = [
    "__version__",
    "BeamRole",
    "BeamVector",
    "ChannelRealization",
    "ConfigError",
    "DecodingOrder",
    "DegenerateChannel",
    "InvalidBeam",
    "InvalidDistance",
    "NotHermitian",
    "NotPositiveDefinite",
    "OperatingPoint",
    "PowerSplit",
    "RankDeficient",
    "RegionPoint",
    "ScenarioConfig",
    "Scheme",
    "SearchConfig",
    "SecrecyError",
    "SecrecyRatePair",
    "SumRateRow",
    "TooFewRelays",
    "ZeroRelayPower",
    "af_beam",
    "cj_beam",
    "df_beam",
    "gain_magnitude",
    "optimize_point",
    "power_linear",
    "sample_channel",
    "sample_realizations",
    "sum_rate_experiment",
    "trace_region",
]
