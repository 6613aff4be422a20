"""Experiment specifications, presets, CSV tables and run manifests.

An experiment is described by one JSON document::

    {
      "preset": "region_fig2",
      "scenario": {"le": 20, "mc_runs": 200, "seed": 7},
      "search": {"alpha_grid": 101, "pbar_grid": 101, "refine_passes": 2,
                 "mu_grid": [0.0, 0.5, 1.0]},
      "schemes": ["direct", "cj", "df", "af"],
      "sweep": {"kind": "relay_count", "values": [3, 4, 5]},
      "output_path": "region.csv"
    }

Presets pin the geometry and power of the reference layout; only ``le``,
``k``, ``lr`` and the Monte Carlo settings ``mc_runs`` and ``seed`` may be
overridden. The ``custom`` preset accepts every scenario key.

A run manifest is the fully resolved document plus ``library_version`` and
``csv_sha256``; it loads back as a spec and reproduces the same CSV.
"""

import csv
import enum
import hashlib
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .channel import ScenarioConfig, sample_realizations
from .exceptions import ConfigError, TooFewRelays
from .optimize import SearchConfig, Sweep, check_relays, sum_rate_experiment, trace_region
from .rates import Scheme

__all__ = [
    "ExperimentSpec",
    "Preset",
    "load_spec",
    "manifest_dict",
    "parse_spec",
    "run_experiment",
    "spec_to_dict",
    "validate_file",
]


class Preset(str, enum.Enum):
    REGION_FIG2 = "region_fig2"
    SUM_VS_K_FIG3 = "sum_vs_k_fig3"
    SUM_VS_DIST_FIG4 = "sum_vs_dist_fig4"
    CUSTOM = "custom"


# JSON key -> ScenarioConfig field
SCENARIO_KEYS = {
    "l1": "l1",
    "l2": "l2",
    "le": "le",
    "lr": "lr",
    "k": "K",
    "gamma": "gamma",
    "p_dbm": "P_dbm",
    "mc_runs": "mc_runs",
    "seed": "seed",
}
SEARCH_KEYS = ("alpha_grid", "pbar_grid", "refine_passes", "mu_grid")
TOP_KEYS = {"preset", "scenario", "search", "schemes", "sweep", "output_path"}
MANIFEST_KEYS = {"library_version", "csv_sha256"}
PRESET_OVERRIDABLE = {"le", "k", "lr", "mc_runs", "seed"}

REFERENCE_SCENARIO = ScenarioConfig(l1=30.0, l2=40.0, le=50.0, lr=15.0, K=5, gamma=3.5, P_dbm=30.0, mc_runs=200, seed=0)
PRESET_SWEEPS = {
    Preset.SUM_VS_K_FIG3: (Sweep.RELAY_COUNT, (3, 4, 5, 6, 7, 8, 9, 10)),
    Preset.SUM_VS_DIST_FIG4: (Sweep.RELAY_DISTANCE, (5.0, 10.0, 15.0, 20.0, 25.0)),
}
ALL_SCHEMES = (Scheme.DIRECT, Scheme.CJ, Scheme.DF, Scheme.AF)
SUM_RATE_MU = 0.5


@dataclass(frozen=True)
class ExperimentSpec:
    preset: Preset
    scenario: ScenarioConfig
    search: SearchConfig
    schemes: tuple = ALL_SCHEMES
    sweep: Sweep | None = None
    sweep_values: tuple = ()
    output_path: str | None = None

    @property
    def is_sweep(self):
        return self.sweep is not None


@dataclass
class _Collector:
    diags: list = field(default_factory=list)

    def add(self, msg):
        self.diags.append(msg)


def _check_number(c, where, value, integer=False):
    ok = isinstance(value, (int, float)) and not isinstance(value, bool)
    if integer:
        ok = ok and float(value).is_integer()
    if not ok:
        kind = "an integer" if integer else "a number"
        c.add(f"{where}: must be {kind}, got {value!r}")
    return ok


def parse_spec(doc, overrides=None):
    """Build an :class:`ExperimentSpec` from a decoded JSON document.

    ``overrides`` may hold ``seed``, ``mc_runs`` and ``output_path`` and wins
    over the document. Raises :class:`ConfigError` listing every problem.
    """
    c = _Collector()
    overrides = overrides or {}
    if not isinstance(doc, dict):
        raise ConfigError(["<root>: spec must be a JSON object"])
    for key in doc:
        if key not in TOP_KEYS | MANIFEST_KEYS:
            c.add(f"{key}: unknown top-level key")

    raw_preset = doc.get("preset", Preset.CUSTOM.value)
    try:
        preset = Preset(raw_preset)
    except ValueError:
        c.add(f"preset: must be one of {[p.value for p in Preset]}, got {raw_preset!r}")
        preset = Preset.CUSTOM

    scen_doc = doc.get("scenario", {})
    values = REFERENCE_SCENARIO.to_dict()
    if not isinstance(scen_doc, dict):
        c.add("scenario: must be a JSON object")
        scen_doc = {}
    for key, value in scen_doc.items():
        if key not in SCENARIO_KEYS:
            c.add(f"scenario.{key}: unknown key (expected one of {sorted(SCENARIO_KEYS)})")
            continue
        name = SCENARIO_KEYS[key]
        integer = key in ("k", "mc_runs", "seed")
        if not _check_number(c, f"scenario.{key}", value, integer=integer):
            continue
        value = int(value) if integer else float(value)
        if preset is not Preset.CUSTOM and key not in PRESET_OVERRIDABLE and value != values[name]:
            c.add(f"scenario.{key}: fixed at {values[name]} by preset {preset.value}; use preset custom to change it")
            continue
        values[name] = value
    if "seed" in overrides and overrides["seed"] is not None:
        values["seed"] = int(overrides["seed"])
    if "mc_runs" in overrides and overrides["mc_runs"] is not None:
        values["mc_runs"] = int(overrides["mc_runs"])
    scenario = ScenarioConfig(**values)
    c.diags.extend(f"scenario.{_json_key(d)}" for d in scenario.diagnostics())

    search_doc = doc.get("search", {})
    sv = {}
    if not isinstance(search_doc, dict):
        c.add("search: must be a JSON object")
        search_doc = {}
    for key, value in search_doc.items():
        if key not in SEARCH_KEYS:
            c.add(f"search.{key}: unknown key (expected one of {list(SEARCH_KEYS)})")
            continue
        if key == "mu_grid":
            if not isinstance(value, list):
                c.add(f"search.mu_grid: must be a list of numbers, got {value!r}")
                continue
            sv[key] = tuple(float(v) if isinstance(v, int) and not isinstance(v, bool) else v for v in value)
        else:
            sv[key] = value
    if preset in PRESET_SWEEPS and "mu_grid" not in sv:
        sv["mu_grid"] = (SUM_RATE_MU,)
    search = SearchConfig(**sv)
    c.diags.extend(f"search.{d}" for d in search.diagnostics())

    raw_schemes = doc.get("schemes", [s.value for s in ALL_SCHEMES])
    schemes = []
    if not isinstance(raw_schemes, list) or not raw_schemes:
        c.add("schemes: must be a non-empty list")
        raw_schemes = []
    for i, s in enumerate(raw_schemes):
        try:
            scheme = Scheme(s)
        except ValueError:
            c.add(f"schemes[{i}]: unknown scheme {s!r} (expected one of {[x.value for x in Scheme]})")
            continue
        if scheme in schemes:
            c.add(f"schemes[{i}]: duplicate scheme {s!r}")
            continue
        schemes.append(scheme)

    sweep, sweep_values = _parse_sweep(c, doc.get("sweep"), preset)

    out = overrides.get("output_path") or doc.get("output_path")
    if out is not None and not isinstance(out, str):
        c.add(f"output_path: must be a string, got {out!r}")
        out = None

    if c.diags:
        raise ConfigError(c.diags)
    return ExperimentSpec(preset, scenario, search, tuple(schemes), sweep, sweep_values, out)


def _json_key(diag):
    name, _, rest = diag.partition(":")
    inverse = {v: k for k, v in SCENARIO_KEYS.items()}
    return f"{inverse.get(name, name)}:{rest}"


def _parse_sweep(c, raw, preset):
    default = PRESET_SWEEPS.get(preset)
    if raw is None:
        if default is None:
            return None, ()
        return default[0], tuple(default[1])
    if not isinstance(raw, dict):
        c.add("sweep: must be a JSON object with keys kind and values")
        return None, ()
    for key in raw:
        if key not in ("kind", "values"):
            c.add(f"sweep.{key}: unknown key (expected kind or values)")
    try:
        kind = Sweep(raw.get("kind", default[0].value if default else None))
    except ValueError:
        c.add(f"sweep.kind: must be one of {[s.value for s in Sweep]}, got {raw.get('kind')!r}")
        return None, ()
    if preset is Preset.REGION_FIG2:
        c.add("sweep: preset region_fig2 traces regions and takes no sweep")
        return None, ()
    if default is not None and kind is not default[0]:
        c.add(f"sweep.kind: preset {preset.value} sweeps {default[0].value}")
    values = raw.get("values", list(default[1]) if default else None)
    if not isinstance(values, list) or not values:
        c.add("sweep.values: must be a non-empty list")
        return kind, ()
    ok = []
    for i, v in enumerate(values):
        if kind is Sweep.RELAY_COUNT:
            if not _check_number(c, f"sweep.values[{i}]", v, integer=True) or v < 1:
                if isinstance(v, (int, float)) and not isinstance(v, bool) and v < 1:
                    c.add(f"sweep.values[{i}]: relay count must be >= 1, got {v!r}")
                continue
            ok.append(int(v))
        else:
            if not _check_number(c, f"sweep.values[{i}]", v) or not v > 0:
                if isinstance(v, (int, float)) and not isinstance(v, bool) and not v > 0:
                    c.add(f"sweep.values[{i}]: relay distance must be positive, got {v!r}")
                continue
            ok.append(float(v))
    return kind, tuple(ok)


def load_spec(path, overrides=None):
    """Read and parse a spec file.

    Raises
    ------
    OSError
        If the file cannot be read.
    ConfigError
        On malformed JSON (with line and column) or invalid fields.
    """
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([f"line {exc.lineno}, column {exc.colno}: invalid JSON ({exc.msg})"]) from exc
    return parse_spec(doc, overrides)


def precondition_errors(spec):
    """Scheme/relay-count conflicts that make a region run impossible."""
    if spec.is_sweep and spec.sweep is Sweep.RELAY_COUNT:
        return []
    out = []
    for scheme in spec.schemes:
        try:
            check_relays(scheme, spec.scenario.K)
        except TooFewRelays as exc:
            out.append(str(exc))
    return out


def validate_file(path):
    """All diagnostics for a spec file; an empty list means it is runnable.

    Raises ``OSError`` if the file cannot be read.
    """
    try:
        spec = load_spec(path)
    except ConfigError as exc:
        return exc.diagnostics
    return precondition_errors(spec)


def spec_to_dict(spec):
    """Fully resolved JSON document for ``spec``."""
    inverse = {v: k for k, v in SCENARIO_KEYS.items()}
    doc = {
        "preset": spec.preset.value,
        "scenario": {inverse[k]: v for k, v in spec.scenario.to_dict().items()},
        "search": {
            "alpha_grid": spec.search.alpha_grid,
            "pbar_grid": spec.search.pbar_grid,
            "refine_passes": spec.search.refine_passes,
            "mu_grid": list(spec.search.mu_grid),
        },
        "schemes": [s.value for s in spec.schemes],
    }
    if spec.is_sweep:
        doc["sweep"] = {"kind": spec.sweep.value, "values": list(spec.sweep_values)}
    if spec.output_path is not None:
        doc["output_path"] = spec.output_path
    return doc


def manifest_dict(spec, csv_text):
    doc = spec_to_dict(spec)
    doc["library_version"] = __version__
    doc["csv_sha256"] = hashlib.sha256(csv_text.encode("utf-8")).hexdigest()
    return doc


def _num(x):
    return f"{x:.16e}" if x == x else "nan"


REGION_HEADER = ["scheme", "mu", "mean_rs1", "mean_rs2", "mean_sum", "stderr_sum", "n_runs"]
SWEEP_HEADER = ["scheme", "sweep_value", "mean_rs1", "mean_rs2", "mean_sum", "stderr_sum", "n_runs", "error"]


def run_experiment(spec):
    """Run ``spec`` and return ``(rows, csv_text)``.

    ``rows`` are ``(scheme, RegionPoint)`` pairs for region runs and
    :class:`SumRateRow` objects for sweeps. Raises :class:`TooFewRelays`
    when a region run asks for a scheme the relay count cannot support.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    if spec.is_sweep:
        rows = sum_rate_experiment(
            spec.schemes, spec.sweep, spec.sweep_values, spec.scenario, spec.search, mu=spec.search.mu_grid[0]
        )
        writer.writerow(SWEEP_HEADER)
        for r in rows:
            writer.writerow(
                [r.scheme.value, repr(r.sweep_value), _num(r.mean_rs1), _num(r.mean_rs2), _num(r.mean_sum),
                 _num(r.stderr_sum), r.n_runs, r.error]
            )
        return rows, buf.getvalue()
    for scheme in spec.schemes:
        check_relays(scheme, spec.scenario.K)
    realizations = sample_realizations(spec.scenario)
    rows = []
    writer.writerow(REGION_HEADER)
    for scheme in spec.schemes:
        for pt in trace_region(scheme, spec.scenario, spec.search, realizations):
            rows.append((scheme, pt))
            writer.writerow(
                [scheme.value, repr(pt.mu), _num(pt.mean_rs1), _num(pt.mean_rs2), _num(pt.mean_sum),
                 _num(pt.stderr_sum), pt.n_runs]
            )
    return rows, buf.getvalue()
