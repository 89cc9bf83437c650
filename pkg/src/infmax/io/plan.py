"""
Experiment plan: the parameter grid (protocols × thresholds × budgets ×
methods × repetitions) over a list of networks. Serialized as JSON:

    {
      "networks": [
        {"name": "er-2", "type": "ER", "instances": 1,
         "source": {"generator": "er", "n_actors": 1000, "n_layers": 2,
                    "edges_per_layer": [2730, 2729], "rng_seed": 7}},
        {"name": "aucs", "type": "real",
         "source": {"file": "data/aucs.mpx", "format": "mpx"}}
      ],
      "protocols": ["AND", "OR"],
      "budgets": [0.15, 0.2],
      "protocol_budgets": {"OR": [0.05, 0.1]},
      "thresholds": [0.1, 0.2],
      "methods": ["deg-c", "deg-cd", "nghb-1s", "nghb-sd", "random"],
      "repetitions": 30,
      "base_rng_seed": 42,
      "mds_timeout_minutes_per_1000_actors": 5,
      "significance": 0.01,
      "mds_greedy": "degree"
    }
"""

import json
import os
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Mapping, Tuple

from .. import settings
from ..diffusion.mltm import PROTOCOLS
from ..errors import PlanError
from ..mds.search import GREEDY_DEGREE, GREEDY_VARIANTS
from ..network.core import MultilayerNetwork
from ..network.generators import (
    ER_COHORTS,
    SF_COHORTS,
    ErGenConfig,
    PaGenConfig,
    generate_er,
    generate_pa,
)
from ..seeding.heuristics import METHODS
from .multiplex import read_network

NETWORK_TYPES = ("ER", "SF", "real")


@dataclass(frozen=True)
class NetworkSpec:
    name: str
    source: Dict[str, Any]
    instances: int = 1
    type: str = "real"

    def validate(self, base_dir: str | None = None) -> None:
        if not self.name:
            raise PlanError("network name must not be empty")
        if self.instances < 1:
            raise PlanError(f"{self.name}: instances must be >= 1")
        if self.type not in NETWORK_TYPES:
            raise PlanError(f"{self.name}: unknown network type {self.type!r}")
        if "file" in self.source:
            if self.instances != 1:
                raise PlanError(f"{self.name}: file sources have exactly one instance")
        elif self.source.get("generator") not in ("er", "pa"):
            raise PlanError(f"{self.name}: source needs 'file' or generator er|pa")
        else:
            try:
                self._generator_config(0).validate()
            except (KeyError, TypeError, ValueError) as exc:
                raise PlanError(f"{self.name}: {exc}") from exc

    def _generator_config(self, instance: int) -> ErGenConfig | PaGenConfig:
        params = {k: v for k, v in self.source.items() if k != "generator"}
        params["rng_seed"] = int(params.get("rng_seed", 0)) + instance
        if self.source["generator"] == "er":
            params["edges_per_layer"] = tuple(params["edges_per_layer"])
            return ErGenConfig(**params)
        if params.get("dependency") is not None:
            params["dependency"] = tuple(tuple(row) for row in params["dependency"])
        return PaGenConfig(**params)

    def materialize(self, instance: int, base_dir: str | None = None) -> MultilayerNetwork:
        if "file" in self.source:
            path = self.source["file"]
            if base_dir and not os.path.isabs(path):
                path = os.path.join(base_dir, path)
            return read_network(path, self.source.get("format"))
        config = self._generator_config(instance)
        if isinstance(config, ErGenConfig):
            return generate_er(config)
        return generate_pa(config)


@dataclass(frozen=True)
class ExperimentPlan:
    networks: Tuple[NetworkSpec, ...]
    protocols: Tuple[str, ...]
    budgets: Tuple[float, ...]
    thresholds: Tuple[float, ...]
    methods: Tuple[str, ...]
    repetitions: int = 30
    base_rng_seed: int = 0
    mds_timeout_minutes_per_1000_actors: float = field(
        default_factory=lambda: settings.MDS_TIMEOUT_MIN_PER_1000
    )
    significance: float = field(default_factory=lambda: settings.SIGNIFICANCE)
    # Initial dominating set handed to local improvement
    mds_greedy: str = GREEDY_DEGREE
    protocol_budgets: Mapping[str, Tuple[float, ...]] = field(default_factory=dict)
    # Relative file sources resolve against this directory (the plan's folder)
    base_dir: str | None = None

    def budgets_for(self, protocol: str) -> Tuple[float, ...]:
        return tuple(self.protocol_budgets.get(protocol, self.budgets))

    def network_types(self) -> Dict[str, str]:
        return {n.name: n.type for n in self.networks}

    def validate(self) -> None:
        if not self.networks:
            raise PlanError("plan lists no networks")
        names = [n.name for n in self.networks]
        if len(set(names)) != len(names):
            raise PlanError("network names must be unique")
        for spec in self.networks:
            spec.validate(self.base_dir)
        for label, values in (
            ("protocols", self.protocols),
            ("budgets", self.budgets),
            ("thresholds", self.thresholds),
            ("methods", self.methods),
        ):
            if not values:
                raise PlanError(f"{label} must not be empty")
        bad = set(self.protocols) - set(PROTOCOLS)
        if bad:
            raise PlanError(f"unknown protocols {sorted(bad)}")
        bad = set(self.methods) - set(METHODS)
        if bad:
            raise PlanError(f"unknown methods {sorted(bad)}")
        bad = set(self.protocol_budgets) - set(self.protocols)
        if bad:
            raise PlanError(f"protocol_budgets for unscheduled protocols {sorted(bad)}")
        all_budgets = list(self.budgets)
        for values in self.protocol_budgets.values():
            if not values:
                raise PlanError("protocol budget lists must not be empty")
            all_budgets.extend(values)
        for s in all_budgets:
            if not 0 < s < 1:
                raise PlanError(f"budget {s!r} outside (0, 1)")
        for mu in self.thresholds:
            if not 0 < mu < 1:
                raise PlanError(f"threshold {mu!r} outside (0, 1)")
        if self.repetitions < 1:
            raise PlanError("repetitions must be >= 1")
        if self.mds_timeout_minutes_per_1000_actors <= 0:
            raise PlanError("mds timeout must be positive")
        if self.significance < 0:
            raise PlanError("significance must be non-negative")
        if self.mds_greedy not in GREEDY_VARIANTS:
            raise PlanError(f"unknown mds_greedy {self.mds_greedy!r}")


def _floats(values: Any, label: str) -> Tuple[float, ...]:
    if not isinstance(values, list):
        raise PlanError(f"{label} must be a list")
    try:
        return tuple(float(v) for v in values)
    except (TypeError, ValueError) as exc:
        raise PlanError(f"{label}: {exc}") from exc


def plan_from_dict(raw: Mapping[str, Any], base_dir: str | None = None) -> ExperimentPlan:
    try:
        networks = tuple(
            NetworkSpec(
                name=str(n["name"]),
                source=dict(n["source"]),
                instances=int(n.get("instances", 1)),
                type=str(n.get("type", "real")),
            )
            for n in raw["networks"]
        )
        plan = ExperimentPlan(
            networks=networks,
            protocols=tuple(str(p).upper() for p in raw["protocols"]),
            budgets=_floats(raw["budgets"], "budgets"),
            thresholds=_floats(raw["thresholds"], "thresholds"),
            methods=tuple(str(m) for m in raw["methods"]),
            repetitions=int(raw.get("repetitions", 30)),
            base_rng_seed=int(raw.get("base_rng_seed", 0)),
            mds_timeout_minutes_per_1000_actors=float(
                raw.get(
                    "mds_timeout_minutes_per_1000_actors",
                    settings.MDS_TIMEOUT_MIN_PER_1000,
                )
            ),
            significance=float(raw.get("significance", settings.SIGNIFICANCE)),
            mds_greedy=str(raw.get("mds_greedy", GREEDY_DEGREE)),
            protocol_budgets={
                str(k).upper(): _floats(v, f"protocol_budgets.{k}")
                for k, v in dict(raw.get("protocol_budgets") or {}).items()
            },
            base_dir=base_dir,
        )
    except KeyError as exc:
        raise PlanError(f"missing plan field {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, PlanError):
            raise
        raise PlanError(str(exc)) from exc
    plan.validate()
    return plan


def load_plan(text: str, base_dir: str | None = None) -> ExperimentPlan:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PlanError(f"plan is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise PlanError("plan must be a JSON object")
    return plan_from_dict(raw, base_dir=base_dir)


def read_plan(path: str) -> ExperimentPlan:
    with open(path, "r", encoding="utf-8") as f:
        return load_plan(f.read(), base_dir=os.path.dirname(os.path.abspath(path)))


def dump_plan(plan: ExperimentPlan) -> str:
    raw = asdict(plan)
    raw.pop("base_dir", None)
    if not raw["protocol_budgets"]:
        raw.pop("protocol_budgets")
    return json.dumps(raw, indent=2, sort_keys=True) + "\n"


# -- presets ------------------------------------------------------------------

_AND_BUDGETS = (0.15, 0.20, 0.25, 0.30, 0.35)
_OR_BUDGETS = (0.05, 0.10, 0.15, 0.20, 0.25)
_THRESHOLDS = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)


def _sf_source(n_actors: int, n_layers: int, m0: int, rng_seed: int) -> Dict[str, Any]:
    return {
        "generator": "pa",
        "n_actors": n_actors,
        "n_layers": n_layers,
        "m0": m0,
        "m": m0,
        "pr_internal": 0.7,
        "pr_external": 0.2,
        "pr_none": 0.1,
        "rng_seed": rng_seed,
    }


def main_study_plan(base_rng_seed: int = 0, repetitions: int = 30) -> ExperimentPlan:
    """Synthetic part of the main grid: ER and SF cohorts, full parameter space."""
    networks: List[NetworkSpec] = []
    for i, (name, edges) in enumerate(ER_COHORTS.items()):
        networks.append(
            NetworkSpec(
                name=name,
                type="ER",
                source={
                    "generator": "er",
                    "n_actors": 1000,
                    "n_layers": len(edges),
                    "edges_per_layer": list(edges),
                    "rng_seed": base_rng_seed + i,
                },
            )
        )
    for i, (name, params) in enumerate(SF_COHORTS.items()):
        networks.append(
            NetworkSpec(
                name=name,
                type="SF",
                source={
                    "generator": "pa",
                    "n_actors": 1000,
                    **params,
                    "rng_seed": base_rng_seed + 100 + i,
                },
            )
        )
    plan = ExperimentPlan(
        networks=tuple(networks),
        protocols=PROTOCOLS,
        budgets=_AND_BUDGETS,
        protocol_budgets={"AND": _AND_BUDGETS, "OR": _OR_BUDGETS},
        thresholds=_THRESHOLDS,
        methods=METHODS,
        repetitions=repetitions,
        base_rng_seed=base_rng_seed,
    )
    plan.validate()
    return plan


def _followup_plan(
    networks: List[NetworkSpec], base_rng_seed: int, repetitions: int
) -> ExperimentPlan:
    plan = ExperimentPlan(
        networks=tuple(networks),
        protocols=("AND",),
        budgets=(0.30,),
        thresholds=(0.2,),
        methods=METHODS,
        repetitions=repetitions,
        base_rng_seed=base_rng_seed,
    )
    plan.validate()
    return plan


def sf_actors_followup_plan(
    base_rng_seed: int = 0, instances: int = 20, repetitions: int = 30
) -> ExperimentPlan:
    networks = [
        NetworkSpec(
            name=f"sf-a{n}",
            type="SF",
            instances=instances,
            source=_sf_source(n, 3, 6, base_rng_seed + n * 1000),
        )
        for n in (500, 750, 1000, 1250, 1500)
    ]
    return _followup_plan(networks, base_rng_seed, repetitions)


def sf_hubs_followup_plan(
    base_rng_seed: int = 0, instances: int = 20, repetitions: int = 30
) -> ExperimentPlan:
    networks = [
        NetworkSpec(
            name=f"sf-m{m0}",
            type="SF",
            instances=instances,
            source=_sf_source(1000, 3, m0, base_rng_seed + m0 * 1000),
        )
        for m0 in (2, 4, 6, 8, 10)
    ]
    return _followup_plan(networks, base_rng_seed, repetitions)


PRESETS = {
    "main_study": main_study_plan,
    "sf_actors_followup": sf_actors_followup_plan,
    "sf_hubs_followup": sf_hubs_followup_plan,
}
