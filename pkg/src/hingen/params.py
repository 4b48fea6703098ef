"""Generator parameters and their JSON config representation."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, fields

from .schema import Schema

DEFAULT_P = 0.7
DEFAULT_Q = 0.3

LABEL_POLICIES = ("proportional", "uniform")
MULTI_LABEL_MODES = ("product", "mixture")
MINOR_FEATURE_POLICIES = ("constant", "id", "none")


class ConfigError(ValueError):
    pass


def cap_key(node_type: str, neighbor_type: str) -> str:
    return f"{node_type}:{neighbor_type}"


def split_cap_key(key: str) -> tuple[str, str]:
    a, sep, b = key.partition(":")
    if not sep or not a or not b:
        raise ConfigError(f"degree cap key must look like 'type:neighbor_type', got {key!r}")
    return a, b


def path_key(types) -> str:
    return "-".join(types)


@dataclass
class GeneratorParams:
    """Everything the pipeline needs besides the reference profile.

    ``p`` holds the intra-cluster merge probability per minor node type and
    ``q`` the inter-cluster one (the target type is only read from ``q`` when
    ``multi_label`` is set). ``alpha`` is the within-cluster feature variance
    and ``beta`` the variance of cluster centres, so class separation grows
    with beta/alpha. ``caps=None`` takes degree caps from the reference
    profile; ``prune=False`` skips pruning altogether.
    """

    n_motifs: int
    p: dict[str, float] = field(default_factory=dict)
    q: dict[str, float] = field(default_factory=dict)
    multi_label: bool = False
    alpha: float = 1.0
    beta: float = 1.0
    feature_dim: int = 64
    max_hops: int = 2
    bridge_ranges: dict[str, tuple[int, int]] = field(default_factory=dict)
    caps: dict[str, int] | None = None
    prune: bool = True
    seed: int = 0
    label_policy: str = "proportional"
    multi_label_mode: str = "product"
    minor_features: str = "none"

    @property
    def snr(self) -> float:
        """beta / alpha: centre spread over within-cluster variance."""
        return self.beta / self.alpha

    def validate(self, schema: Schema | None = None) -> None:
        if self.n_motifs < 1:
            raise ConfigError("n_motifs must be >= 1")
        for name, probs in (("p", self.p), ("q", self.q)):
            for t, x in probs.items():
                if not (0.0 <= x <= 1.0) or math.isnan(x):
                    raise ConfigError(f"{name}[{t}] = {x} is outside [0, 1]")
        if not self.alpha > 0:
            raise ConfigError("alpha must be > 0")
        if not self.beta > 0:
            raise ConfigError("beta must be > 0")
        if self.feature_dim < 1:
            raise ConfigError("feature_dim must be >= 1")
        if self.max_hops < 2:
            raise ConfigError("max_hops must be >= 2")
        for k, (lo, hi) in self.bridge_ranges.items():
            if not 1 <= lo <= hi:
                raise ConfigError(f"bridge range for {k} must satisfy 1 <= min <= max, got [{lo}, {hi}]")
        for choice, allowed in (
            (self.label_policy, LABEL_POLICIES),
            (self.multi_label_mode, MULTI_LABEL_MODES),
            (self.minor_features, MINOR_FEATURE_POLICIES),
        ):
            if choice not in allowed:
                raise ConfigError(f"{choice!r} is not one of {allowed}")
        if self.caps is not None:
            for k, c in self.caps.items():
                split_cap_key(k)
                if c < 0:
                    raise ConfigError(f"degree cap {k} is negative")
        if schema is not None:
            if self.n_motifs < len(schema.labels):
                raise ConfigError(
                    f"n_motifs={self.n_motifs} is smaller than the label count {len(schema.labels)}"
                )
            for name, probs in (("p", self.p), ("q", self.q)):
                for t in probs:
                    if t not in schema.node_types:
                        raise ConfigError(f"{name} names unknown node type {t!r}")
            if schema.target_type in self.p:
                raise ConfigError("intra-cluster merging of target nodes is not allowed")
            if self.caps is not None:
                for k in self.caps:
                    for t in split_cap_key(k):
                        if t not in schema.node_types:
                            raise ConfigError(f"degree cap {k} names unknown node type {t!r}")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["bridge_ranges"] = {k: list(v) for k, v in self.bridge_ranges.items()}
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "GeneratorParams":
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ConfigError(f"unknown generator keys: {sorted(unknown)}")
        if "n_motifs" not in d:
            raise ConfigError("generator section needs n_motifs")
        d = dict(d)
        if "bridge_ranges" in d:
            d["bridge_ranges"] = {k: (int(v[0]), int(v[1])) for k, v in d["bridge_ranges"].items()}
        for k in ("p", "q"):
            if k in d:
                d[k] = {t: float(x) for t, x in d[k].items()}
        if d.get("caps") is not None:
            d["caps"] = {k: int(v) for k, v in d["caps"].items()}
        return cls(**d)


def apply_override(cfg: dict, assignment: str) -> None:
    """Apply ``key=value`` (dotted keys, JSON values) to a generator section in place.

    ``p=0.5`` with a scalar sets every entry already present in ``p``.
    """
    key, sep, raw = assignment.partition("=")
    if not sep:
        raise ConfigError(f"--set expects key=value, got {assignment!r}")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    parts = key.strip().split(".")
    target = cfg
    for part in parts[:-1]:
        target = target.setdefault(part, {})
        if not isinstance(target, dict):
            raise ConfigError(f"cannot set {key!r}: {part!r} is not a table")
    last = parts[-1]
    if last in ("p", "q") and len(parts) == 1 and isinstance(value, (int, float)):
        cfg[last] = {t: float(value) for t in cfg.get(last, {})}
        return
    target[last] = value
