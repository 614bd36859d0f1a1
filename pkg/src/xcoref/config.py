"""Pipeline configuration: thresholds, matrices, and the category map.

Every value has a default so the pipeline runs with only a corpus and a
vector file; the similarity thresholds are tunable per run and deliberately
prominent, since the source method reports them only as experimentally
derived.
"""
import json
import os
from dataclasses import dataclass, field

from .errors import FormatError
from .typesys import CategoryMap, ComparisonMatrix, default_category_map, default_matrix

ENV_CONFIG = "XCOREF_CONFIG"


@dataclass
class PipelineConfig:
    t_nn: float = 0.5
    t_gr: float = 0.5
    t_cl: float = 0.4
    k: float = 2.0
    s_core: float = 0.6
    d_min: float = 0.3
    s_assign: float = 0.5
    oov_seed: int = 0
    aggregate: str = "pooled"
    matrices: dict = field(default_factory=dict)  # sieve id -> ComparisonMatrix
    category_map: CategoryMap = None

    def __post_init__(self):
        if not self.matrices:
            self.matrices = {i: default_matrix(i) for i in range(1, 6)}
        if self.category_map is None:
            self.category_map = default_category_map()
        self.validate()

    def validate(self):
        checks = [
            ("t_nn", self.t_nn, 0.0, 1.0),
            ("t_gr", self.t_gr, 0.0, 1.0),
            ("t_cl", self.t_cl, 0.0, 2.0),
            ("s_core", self.s_core, 0.0, 1.0),
            ("d_min", self.d_min, 0.0, 1.0),
            ("s_assign", self.s_assign, 0.0, 1.0),
        ]
        for name, value, low, high in checks:
            if not low < value <= high:
                raise FormatError(
                    "%s = %r outside (%g, %g]" % (name, value, low, high))
        if self.k <= 0:
            raise FormatError("k must be positive, got %r" % self.k)
        if self.aggregate not in ("pooled", "macro"):
            raise FormatError("aggregate must be 'pooled' or 'macro'")


_SCALARS = ("t_nn", "t_gr", "t_cl", "k", "s_core", "d_min", "s_assign",
            "oov_seed", "aggregate")


def load_config(path=None):
    """Load a JSON config file; falls back to $XCOREF_CONFIG, then defaults."""
    if path is None:
        path = os.environ.get(ENV_CONFIG)
    if path is None:
        return PipelineConfig()
    with open(path, encoding="utf-8") as handle:
        try:
            raw = json.load(handle)
        except json.JSONDecodeError as exc:
            raise FormatError("config %s: %s" % (path, exc)) from exc
    if not isinstance(raw, dict):
        raise FormatError("config %s: top level must be an object" % path)
    kwargs = {key: raw[key] for key in _SCALARS if key in raw}
    base = os.path.dirname(os.path.abspath(path))
    matrices = {}
    for sieve_id in range(1, 6):
        override = raw.get("matrices", {}).get(str(sieve_id))
        if override is not None:
            matrices[sieve_id] = ComparisonMatrix.from_file(
                os.path.join(base, override), sieve_id)
        else:
            matrices[sieve_id] = default_matrix(sieve_id)
    if "category_map" in raw:
        category_map = CategoryMap.from_file(os.path.join(base, raw["category_map"]))
    else:
        category_map = default_category_map()
    unknown = set(raw) - set(_SCALARS) - {"matrices", "category_map"}
    if unknown:
        raise FormatError("config %s: unknown keys %s" % (path, sorted(unknown)))
    return PipelineConfig(matrices=matrices, category_map=category_map, **kwargs)


def config_echo(config):
    """Scalar view of the config for run reports."""
    return {key: getattr(config, key) for key in _SCALARS}
