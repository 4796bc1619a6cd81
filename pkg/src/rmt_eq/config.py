"""TOML experiment configuration with command-line overrides.

Keys mirror ExperimentConfig field names; an empty document yields the
defaults (L = 2..8, 200 samples per size, Haar states, sigma = 1/sqrt(N),
master seed 0).  Unknown keys are configuration errors, named explicitly.
"""

from __future__ import annotations

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .dephasing import StateKind, TimeGridSpec
from .ensemble import ExperimentConfig, SigmaRule
from .errors import ConfigError, InvalidArgumentError

_TOP_KEYS = {"sizes", "sigma_rule", "sigma", "samples_per_size", "state_kind",
             "master_seed", "workers", "grid"}
_GRID_KEYS = {"points_per_teq", "horizon_teqs"}

_STATE_KINDS = {
    "haar": StateKind.HAAR_RANDOM,
    "haar_random": StateKind.HAAR_RANDOM,
    "basis_all_up": StateKind.BASIS_ALL_UP,
}
_SIGMA_RULES = {
    "inverse_sqrt_n": SigmaRule.INVERSE_SQRT_N,
    "fixed": SigmaRule.FIXED,
}


def parse_config(path=None, overrides=()) -> ExperimentConfig:
    """Load a TOML config file (optional) and apply `key=value` overrides."""
    doc = {}
    if path is not None:
        try:
            with open(path, "rb") as fh:
                doc = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"cannot parse {path}: {exc}") from exc
    for item in overrides:
        _apply_override(doc, item)
    return _build(doc)


def _apply_override(doc: dict, item: str) -> None:
    if "=" not in item:
        raise ConfigError(f"override {item!r} is not of the form key=value")
    key, _, raw = item.partition("=")
    key = key.strip()
    try:
        value = tomllib.loads(f"v = {raw.strip()}")["v"]
    except tomllib.TOMLDecodeError:
        value = raw.strip()  # bare strings need no quotes on the command line
    target = doc
    parts = key.split(".")
    for part in parts[:-1]:
        target = target.setdefault(part, {})
        if not isinstance(target, dict):
            raise ConfigError(f"override {key!r} descends into a non-table value")
    target[parts[-1]] = value


def _build(doc: dict) -> ExperimentConfig:
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown configuration key {sorted(unknown)[0]!r}")
    grid_doc = doc.get("grid", {})
    if not isinstance(grid_doc, dict):
        raise ConfigError("'grid' must be a table")
    unknown = set(grid_doc) - _GRID_KEYS
    if unknown:
        raise ConfigError(f"unknown configuration key 'grid.{sorted(unknown)[0]}'")

    sizes = doc.get("sizes", [2, 3, 4, 5, 6, 7, 8])
    if not isinstance(sizes, list) or not all(isinstance(s, int) for s in sizes):
        raise ConfigError("'sizes' must be a list of integers (qubit counts)")

    rule_name = doc.get("sigma_rule", "inverse_sqrt_n")
    if rule_name not in _SIGMA_RULES:
        raise ConfigError(f"'sigma_rule' must be one of {sorted(_SIGMA_RULES)}, got {rule_name!r}")
    rule = _SIGMA_RULES[rule_name]

    state_name = doc.get("state_kind", "haar")
    if state_name not in _STATE_KINDS:
        raise ConfigError(f"'state_kind' must be one of {sorted(_STATE_KINDS)}, got {state_name!r}")

    sigma = doc.get("sigma")
    if sigma is not None and not isinstance(sigma, (int, float)):
        raise ConfigError("'sigma' must be a number")

    grid = TimeGridSpec(
        points_per_teq=_expect_int(grid_doc, "points_per_teq", 64),
        horizon_teqs=float(_expect_number(grid_doc, "horizon_teqs", 40.0)),
    )
    try:
        return ExperimentConfig(
            sizes=tuple(sizes),
            sigma_rule=rule,
            sigma=None if sigma is None else float(sigma),
            samples_per_size=_expect_int(doc, "samples_per_size", 200),
            state_kind=_STATE_KINDS[state_name],
            grid=grid,
            master_seed=_expect_int(doc, "master_seed", 0),
            workers=_expect_int(doc, "workers", 1),
        )
    except InvalidArgumentError as exc:
        raise ConfigError(str(exc)) from exc


def _expect_int(doc: dict, key: str, default: int) -> int:
    value = doc.get(key, default)
    if not isinstance(value, int) or isinstance(value, bool):
        raise ConfigError(f"'{key}' must be an integer, got {value!r}")
    return value


def _expect_number(doc: dict, key: str, default: float):
    value = doc.get(key, default)
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ConfigError(f"'{key}' must be a number, got {value!r}")
    return value


def config_echo(cfg: ExperimentConfig) -> dict:
    """Resolved configuration as plain JSON-serializable values.

    The worker count is deliberately omitted: it is scheduling, not an
    experiment parameter, and emitted files must be byte-identical across
    worker counts.
    """
    return {
        "sizes": list(cfg.sizes),
        "sigma_rule": cfg.sigma_rule.value,
        "sigma": cfg.sigma,
        "samples_per_size": cfg.samples_per_size,
        "state_kind": cfg.state_kind.value,
        "grid": {"points_per_teq": cfg.grid.points_per_teq,
                 "horizon_teqs": cfg.grid.horizon_teqs},
        "master_seed": cfg.master_seed,
    }
