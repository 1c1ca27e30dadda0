"""JSON run configuration: loading, validation, CLI overrides.

The schema is versioned so that emitted figures stay reproducible.  A
config names one workflow and the inputs it needs:

* ``region``   -- a Gaussian channel, region kinds and a sweep grid;
* ``verify``   -- suite selection and trial counts;
* ``simulate`` -- a discrete instance (channel, factored input law, bit
  layout) plus sampling parameters.

Malformed configs raise ``ConfigError``; the CLI maps that to exit
code 2.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .discrete_ic import DiscreteIC, SingleLetterLaw
from .gaussian import REGION_KINDS, GaussianIC, SweepConfig
from .hashing import MessageLayout
from .verify import SUITE_NAMES

SCHEMA_VERSION = 1
WORKFLOWS = ("region", "verify", "simulate")
UNITS = ("nats", "bits")

__all__ = ["ConfigError", "DiscreteInstance", "RunConfig", "load_config"]


class ConfigError(ValueError):
    """The configuration file is missing, malformed, or inconsistent."""


@dataclass(frozen=True)
class DiscreteInstance:
    """A fully specified discrete instance for exact simulation."""

    channel: DiscreteIC
    law: SingleLetterLaw
    blocklength: int
    common_bits: tuple[int, int]
    private_bits: tuple[int, int]
    layouts: tuple[MessageLayout, MessageLayout]
    index_set: tuple[int, ...]


@dataclass(frozen=True)
class RunConfig:
    workflow: str
    units: str = "nats"
    seed: int = 0
    out_dir: str = "out"
    gaussian: GaussianIC | None = None
    regions: tuple[str, ...] = ()
    sweep: SweepConfig = field(default_factory=SweepConfig)
    rho_grid: tuple[float, ...] = (0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.9)
    delta: float = 0.01
    suites: tuple[str, ...] = SUITE_NAMES
    trials: int = 1000
    discrete: DiscreteInstance | None = None
    samples: int = 200
    decode_trials: int = 2000


def _require(obj: dict, key: str, context: str):
    if key not in obj:
        raise ConfigError(f"missing required key {key!r} in {context}")
    return obj[key]


def _layout_from_json(obj: dict, context: str) -> MessageLayout:
    try:
        return MessageLayout(
            secret_lengths=tuple(int(k) for k in _require(obj, "secret_bits", context)),
            dummy_length=int(obj.get("dummy_bits", 0)),
        )
    except ValueError as exc:
        raise ConfigError(f"bad layout in {context}: {exc}") from exc


def _discrete_from_json(obj: dict) -> DiscreteInstance:
    chan = _require(obj, "channel", "discrete instance")
    law = _require(obj, "law", "discrete instance")
    try:
        channel = DiscreteIC(np.asarray(_require(chan, "transition", "channel"), dtype=float))
        single_letter = SingleLetterLaw(
            p_u=_require(law, "p_u", "law"),
            p_wv1_given_u=_require(law, "p_wv1_given_u", "law"),
            p_wv2_given_u=_require(law, "p_wv2_given_u", "law"),
            p_x1_given_v1=_require(law, "p_x1_given_v1", "law"),
            p_x2_given_v2=_require(law, "p_x2_given_v2", "law"),
        )
    except ValueError as exc:
        raise ConfigError(f"bad discrete instance: {exc}") from exc
    common = tuple(int(b) for b in _require(obj, "common_bits", "discrete instance"))
    private = tuple(int(b) for b in _require(obj, "private_bits", "discrete instance"))
    if len(common) != 2 or len(private) != 2:
        raise ConfigError("common_bits and private_bits need one entry per transmitter")
    layouts = (
        _layout_from_json(_require(obj, "layout1", "discrete instance"), "layout1"),
        _layout_from_json(_require(obj, "layout2", "discrete instance"), "layout2"),
    )
    for t in (0, 1):
        if layouts[t].total_bits != common[t] + private[t]:
            raise ConfigError(
                f"layout{t + 1} covers {layouts[t].total_bits} bits but the code "
                f"word has {common[t] + private[t]}"
            )
    index_set = tuple(sorted(int(i) for i in obj.get("index_set", [1])))
    if not index_set or not set(index_set) <= set(range(1, layouts[0].num_secret + 1)):
        raise ConfigError("index_set must select message segments of layout1")
    return DiscreteInstance(
        channel=channel,
        law=single_letter,
        blocklength=int(_require(obj, "blocklength", "discrete instance")),
        common_bits=common,
        private_bits=private,
        layouts=layouts,
        index_set=index_set,
    )


def load_config(
    path,
    out_dir: str | None = None,
    units: str | None = None,
    grid: int | None = None,
    rho: list[float] | None = None,
    seed: int | None = None,
    suite: str | None = None,
) -> RunConfig:
    """Parse and validate a config file, applying CLI overrides."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file {path} does not exist")
    try:
        raw = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    version = raw.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ConfigError(f"unsupported schema_version {version!r}; expected {SCHEMA_VERSION}")

    workflow = _require(raw, "workflow", "config")
    if workflow not in WORKFLOWS:
        raise ConfigError(f"unknown workflow {workflow!r}; expected one of {WORKFLOWS}")

    chosen_units = units or raw.get("units", "nats")
    if chosen_units not in UNITS:
        raise ConfigError(f"units must be one of {UNITS}, got {chosen_units!r}")

    chosen_seed = seed if seed is not None else int(raw.get("seed", 0))
    if chosen_seed < 0:
        raise ConfigError("seed must be nonnegative")

    sweep_raw = raw.get("sweep", {})
    resolution = grid if grid is not None else int(sweep_raw.get("resolution", 21))
    try:
        sweep = SweepConfig(
            resolution=resolution,
            bounds=tuple(sweep_raw.get("bounds", (0.0, 1.0))),
            chunk_size=int(sweep_raw.get("chunk_size", 1 << 17)),
        )
    except ValueError as exc:
        raise ConfigError(f"bad sweep config: {exc}") from exc

    rho_grid = tuple(float(r) for r in (rho if rho is not None else raw.get(
        "rho_grid", RunConfig.rho_grid
    )))
    if any(not 0.0 < r < 1.0 for r in rho_grid):
        raise ConfigError("every rho in the grid must lie strictly between 0 and 1")

    gaussian = None
    if "gaussian" in raw:
        g = raw["gaussian"]
        try:
            gaussian = GaussianIC(
                tau1=float(_require(g, "tau1", "gaussian channel")),
                tau2=float(_require(g, "tau2", "gaussian channel")),
                p1=float(_require(g, "p1", "gaussian channel")),
                p2=float(_require(g, "p2", "gaussian channel")),
            )
        except ValueError as exc:
            raise ConfigError(f"bad gaussian channel: {exc}") from exc

    regions = tuple(raw.get("regions", ()))
    for kind in regions:
        if kind not in REGION_KINDS:
            raise ConfigError(f"unknown region kind {kind!r}; expected one of {REGION_KINDS}")

    suites = (suite,) if suite else tuple(raw.get("suites", SUITE_NAMES))
    for name in suites:
        if name not in SUITE_NAMES:
            raise ConfigError(f"unknown suite {name!r}; expected one of {SUITE_NAMES}")

    discrete = _discrete_from_json(raw["discrete"]) if "discrete" in raw else None

    config = RunConfig(
        workflow=workflow,
        units=chosen_units,
        seed=chosen_seed,
        out_dir=out_dir or raw.get("output_dir", "out"),
        gaussian=gaussian,
        regions=regions,
        sweep=sweep,
        rho_grid=rho_grid,
        delta=float(raw.get("delta", 0.01)),
        suites=suites,
        trials=int(raw.get("trials", 1000)),
        discrete=discrete,
        samples=int(raw.get("samples", 200)),
        decode_trials=int(raw.get("decode_trials", 2000)),
    )

    if workflow == "region":
        if config.gaussian is None:
            raise ConfigError("the region workflow needs a 'gaussian' channel spec")
        if not config.regions:
            raise ConfigError("the region workflow needs a nonempty 'regions' list")
    if workflow == "simulate" and config.discrete is None:
        raise ConfigError("the simulate workflow needs a 'discrete' instance")
    return config
