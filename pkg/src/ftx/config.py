"""Run configuration for the command-line front end.

TOML is the primary format and JSON is accepted; the parsed mapping is
normalized into a RunConfig.  Every emitted report embeds the resolved
configuration so runs are auditable and byte-reproducible.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

from .budget import AlgorithmKind
from .gatecosts import SynthesisConstants
from .lattices import LatticeSpec, lattice_spec_from_mapping
from .planner import HardwareSpec

__all__ = ["ConfigError", "RunConfig", "load_config", "resolved_config_dict"]


class ConfigError(ValueError):
    """Configuration file missing, malformed, or inconsistent."""


_ALGORITHM_ALIASES = {kind.value: kind for kind in AlgorithmKind}


@dataclass(frozen=True)
class RunConfig:
    models: tuple[tuple[str, LatticeSpec], ...]
    epsilon: float
    algorithms: tuple[AlgorithmKind, ...]
    hardware: HardwareSpec
    consts: SynthesisConstants
    use_simulation: bool = True
    collect_trace: bool = False
    sweep_epsilons: tuple[float, ...] = ()
    sweep_p: tuple[float, ...] = ()
    crossover: dict = field(default_factory=dict)
    output_format: str = "json"
    raw: dict = field(default_factory=dict)


def _model_name(cfg: dict) -> str:
    extents = "x".join(str(e) for e in cfg["extents"])
    return f"{cfg['model']}_{extents}"


def _parse_mapping(cfg: dict) -> RunConfig:
    try:
        model_cfgs = cfg.get("models") or [cfg["model"]]
        if isinstance(model_cfgs, dict):
            model_cfgs = [model_cfgs]
        models = tuple(
            (_model_name(mc), lattice_spec_from_mapping(mc)) for mc in model_cfgs
        )
        epsilon = float(cfg.get("epsilon", 0.01))
        algo_sel = cfg.get("algorithm", "all")
        if algo_sel == "all":
            algorithms = tuple(AlgorithmKind)
        else:
            if isinstance(algo_sel, str):
                algo_sel = [algo_sel]
            algorithms = tuple(_ALGORITHM_ALIASES[a] for a in algo_sel)
        hardware = HardwareSpec(**cfg.get("hardware", {}))
        syn = cfg.get("synthesis", {})
        consts = SynthesisConstants(
            gamma=float(syn.get("gamma", 1.03)), xi=float(syn.get("xi", 5.6))
        )
        sim = cfg.get("simulate", {})
        sweep = cfg.get("sweep", {})
        return RunConfig(
            models=models,
            epsilon=epsilon,
            algorithms=algorithms,
            hardware=hardware,
            consts=consts,
            use_simulation=bool(sim.get("use_simulation", True)),
            collect_trace=bool(sim.get("trace", False)),
            sweep_epsilons=tuple(float(e) for e in sweep.get("epsilons", ())),
            sweep_p=tuple(float(p) for p in sweep.get("p_list", ())),
            crossover=dict(cfg.get("crossover", {})),
            output_format=str(cfg.get("format", "json")),
            raw=cfg,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid configuration: {exc}") from exc


def load_config(path: Union[str, Path]) -> RunConfig:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"configuration file not found: {path}")
    raw = path.read_bytes()
    try:
        if path.suffix == ".json":
            cfg = json.loads(raw)
        else:
            try:
                import tomllib
            except ModuleNotFoundError:
                import tomli as tomllib
            cfg = tomllib.loads(raw.decode())
    except Exception as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError(f"top level of {path} must be a table/object")
    return _parse_mapping(cfg)


def resolved_config_dict(config: RunConfig) -> dict:
    """JSON-serializable echo of every resolved setting."""

    def spec_dict(spec: LatticeSpec) -> dict:
        model = {
            "variant": type(spec.model).__name__,
            **dataclasses.asdict(spec.model),
        }
        return {
            "extents": list(spec.extents),
            "boundary": [b.value for b in spec.boundary],
            "model": model,
        }

    return {
        "models": {name: spec_dict(spec) for name, spec in config.models},
        "epsilon": config.epsilon,
        "algorithms": [a.value for a in config.algorithms],
        "hardware": dataclasses.asdict(config.hardware),
        "synthesis": dataclasses.asdict(config.consts),
        "use_simulation": config.use_simulation,
        "sweep_epsilons": list(config.sweep_epsilons),
        "sweep_p": list(config.sweep_p),
        "crossover": config.crossover,
        "format": config.output_format,
    }
