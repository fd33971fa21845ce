"""Scenario configuration: JSON in, validated machines and profiles out.

A scenario file is a JSON object whose keys override :data:`DEFAULT_SCENARIO`
(nested objects merge key by key, lists and scalars replace).  The default
scenario is the A100-class chip versus a 10,000-logical-qubit machine.

Schema (all keys optional)::

    {
      "time_budget": 1e6,
      "speedups": [2, 3, 4],
      "kinds": {"<name>": {"gate_equivalents": ..., "quantum_mult_width": ...,
                           "datasheet_mix_halving": true}},
      "classical": {"<label>": {"model": "datasheet", "raw_rates": {...}, "io_bandwidth": ...}
                             | {"model": "asic", "transistor_budget": ..., "cycle_time": ...,
                                "transistors_per_gate": ..., "control_overhead_factor": ...,
                                "io_bandwidth": ...}
                             | {"model": "depth_limited", "ops_per_cycle": ...,
                                "clock_frequency": ..., "io_bandwidth": ...}},
      "budget_machine": "asic",
      "slowdown": {"reference": "gpu", "limited": "depth_limited", "kind": "fp16"},
      "quantum": {"logical_qubits": ..., "cycle_time": ..., "gates_per_io_bit": ...,
                  "factories_per_unit": ..., "throughput_overrides": {"<kind>": op/s},
                  "factory": {"physical_qubits_per_factory": ..., "cycles_per_ccz": ...,
                              "code_distance": ..., "physical_gate_error": ...,
                              "target_ccz_volume": ...}},
      "use_presets": false,
      "profiles": [{"name": ..., "speedup": 2 | "exponential", "oracle": {"<kind>": ops},
                    "input_bits": ..., "output_bits": ..., "structured": false,
                    "data_bound": false, "notes": ""}],
      "sweeps": {"<name>": {"parameter": "quantum.cycle_time", "output": "m_max",
                            "values": [...] | "start": a, "stop": b, ("num": n, "scale": "lin"|"log")
                                                                   | "step": s,
                            "kind": "fp16", "k": 2, "machine": "asic", "oracle_ops": 1}}
    }
"""

from __future__ import annotations

import copy
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from .crossover import EXPONENTIAL, SpeedupExponent
from .errors import EstimatorError
from .machines import (
    AsicChipSpec,
    ClassicalMachine,
    DatasheetChipSpec,
    DepthLimitedSpec,
    OperationKind,
    build_classical_machine,
)
from .qarith import FactorySpec, QuantumMachine, QuantumMachineSpec, build_quantum_machine
from .verdict import ApplicationProfile, preset_profiles

DEFAULT_SCENARIO: Dict[str, Any] = {
    "time_budget": 1e6,
    "speedups": [2, 3, 4],
    "kinds": {
        "fp16": {"gate_equivalents": 7000, "quantum_mult_width": 10, "datasheet_mix_halving": True},
        "int32": {"gate_equivalents": 18000, "quantum_mult_width": 32, "datasheet_mix_halving": True},
        "binary": {"gate_equivalents": 50, "quantum_mult_width": 1, "datasheet_mix_halving": False},
    },
    "classical": {
        "gpu": {
            "model": "datasheet",
            "raw_rates": {"fp16": 390e12, "int32": 19.5e12, "binary": 4992e12},
            "io_bandwidth": 1e13,
        },
        "asic": {
            "model": "asic",
            "transistor_budget": 54.2e9,
            "cycle_time": 0.7e-9,
            "transistors_per_gate": 10,
            "control_overhead_factor": 2,
            "io_bandwidth": 1e13,
        },
        "depth_limited": {
            "model": "depth_limited",
            "ops_per_cycle": 1,
            "clock_frequency": 2e9,
            "io_bandwidth": 1e13,
        },
    },
    "budget_machine": "asic",
    "slowdown": {"reference": "gpu", "limited": "depth_limited", "kind": "fp16"},
    "quantum": {
        "logical_qubits": 10000,
        "cycle_time": 1e-5,
        "gates_per_io_bit": 1,
        "factories_per_unit": 5.5,
        "throughput_overrides": {},
        "factory": {
            "physical_qubits_per_factory": 147904,
            "cycles_per_ccz": 5.5,
            "code_distance": 31,
            "physical_gate_error": 1e-3,
            "target_ccz_volume": 1e8,
        },
    },
    "use_presets": False,
    "profiles": [],
    "sweeps": {},
}


class ScenarioError(EstimatorError):
    """Base for scenario loading failures."""


class ScenarioFileMissing(ScenarioError):
    pass


class ScenarioParseError(ScenarioError):
    pass


class ScenarioValidationError(ScenarioError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass(frozen=True)
class SweepSpec:
    name: str
    parameter: str
    values: Tuple[float, ...]
    output: str = "m_max"
    kind: str = "fp16"
    k: float = 2
    machine: Optional[str] = None
    oracle_ops: float = 1


@dataclass(frozen=True)
class Scenario:
    raw: Dict[str, Any]
    time_budget: float
    speedups: Tuple[SpeedupExponent, ...]
    kinds: Tuple[OperationKind, ...]
    classical_specs: Dict[str, Tuple[str, Any]]
    classical: Dict[str, ClassicalMachine]
    budget_machine: str
    slowdown: Dict[str, str]
    quantum_spec: QuantumMachineSpec
    quantum: QuantumMachine
    use_presets: bool
    profiles: Tuple[ApplicationProfile, ...]
    sweeps: Dict[str, SweepSpec]

    def kind(self, name: str) -> OperationKind:
        for k in self.kinds:
            if k.name == name:
                return k
        raise ScenarioValidationError("kinds", f"unknown kind {name!r}")

    def all_profiles(self) -> List[ApplicationProfile]:
        profiles = list(self.profiles)
        if self.use_presets:
            profiles.extend(preset_profiles())
        return sorted(profiles, key=lambda p: p.name)


def merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    out = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = merge(out[key], value)
        else:
            out[key] = copy.deepcopy(value)
    return out


def _num(d: Dict[str, Any], key: str, path: str, *, positive: bool = True, minimum: float | None = None) -> float:
    value = d.get(key)
    where = f"{path}.{key}" if path else key
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ScenarioValidationError(where, f"expected a finite number, got {value!r}")
    if positive and value <= 0:
        raise ScenarioValidationError(where, f"must be > 0, got {value!r}")
    if minimum is not None and value < minimum:
        raise ScenarioValidationError(where, f"must be >= {minimum:g}, got {value!r}")
    return value


def _obj(value: Any, path: str) -> Dict[str, Any]:
    if not isinstance(value, dict):
        raise ScenarioValidationError(path, f"expected an object, got {type(value).__name__}")
    return value


def _flag(d: Dict[str, Any], key: str, path: str, default: bool = False) -> bool:
    value = d.get(key, default)
    if not isinstance(value, bool):
        raise ScenarioValidationError(f"{path}.{key}", f"expected true/false, got {value!r}")
    return value


def _speedup(value: Any, path: str) -> SpeedupExponent:
    if value == "exponential":
        return EXPONENTIAL
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value) or value <= 1:
        raise ScenarioValidationError(path, f"expected a number > 1 or \"exponential\", got {value!r}")
    return value


def _kinds(raw: Dict[str, Any]) -> Tuple[OperationKind, ...]:
    kinds = []
    for name, d in _obj(raw.get("kinds"), "kinds").items():
        path = f"kinds.{name}"
        d = _obj(d, path)
        width = _num(d, "quantum_mult_width", path)
        if int(width) != width:
            raise ScenarioValidationError(f"{path}.quantum_mult_width", f"must be an integer, got {width!r}")
        kinds.append(
            OperationKind(
                name,
                gate_equivalents=_num(d, "gate_equivalents", path),
                quantum_mult_width=int(width),
                datasheet_mix_halving=_flag(d, "datasheet_mix_halving", path, True),
            )
        )
    if not kinds:
        raise ScenarioValidationError("kinds", "at least one operation kind is required")
    return tuple(kinds)


def _classical_spec(label: str, d: Dict[str, Any], kinds) -> Tuple[str, Any]:
    path = f"classical.{label}"
    d = _obj(d, path)
    model = d.get("model")
    if model == "datasheet":
        rates_d = _obj(d.get("raw_rates"), f"{path}.raw_rates")
        for k in kinds:
            if k.name not in rates_d:
                raise ScenarioValidationError(f"{path}.raw_rates.{k.name}", "missing raw rate for kind")
        rates = {name: _num(rates_d, name, f"{path}.raw_rates") for name in rates_d}
        return model, DatasheetChipSpec(raw_rates=rates, io_bandwidth=_num(d, "io_bandwidth", path))
    if model == "asic":
        fields = ("transistor_budget", "cycle_time", "transistors_per_gate", "control_overhead_factor", "io_bandwidth")
        return model, AsicChipSpec(**{f: _num(d, f, path) for f in fields})
    if model == "depth_limited":
        fields = ("ops_per_cycle", "clock_frequency", "io_bandwidth")
        return model, DepthLimitedSpec(**{f: _num(d, f, path) for f in fields})
    raise ScenarioValidationError(f"{path}.model", f"expected datasheet|asic|depth_limited, got {model!r}")


def _quantum_spec(raw: Dict[str, Any], kinds) -> QuantumMachineSpec:
    d = _obj(raw.get("quantum"), "quantum")
    f = _obj(d.get("factory"), "quantum.factory")
    distance = _num(f, "code_distance", "quantum.factory", minimum=3)
    if int(distance) != distance or distance % 2 == 0:
        raise ScenarioValidationError("quantum.factory.code_distance", f"must be an odd integer, got {distance!r}")
    factory = FactorySpec(
        physical_qubits_per_factory=_num(f, "physical_qubits_per_factory", "quantum.factory"),
        cycles_per_ccz=_num(f, "cycles_per_ccz", "quantum.factory"),
        code_distance=int(distance),
        physical_gate_error=_num(f, "physical_gate_error", "quantum.factory"),
        target_ccz_volume=_num(f, "target_ccz_volume", "quantum.factory"),
    )
    overrides_d = _obj(d.get("throughput_overrides", {}), "quantum.throughput_overrides")
    names = {k.name for k in kinds}
    for name in overrides_d:
        if name not in names:
            raise ScenarioValidationError(f"quantum.throughput_overrides.{name}", "unknown operation kind")
    return QuantumMachineSpec(
        logical_qubits=_num(d, "logical_qubits", "quantum"),
        cycle_time=_num(d, "cycle_time", "quantum"),
        gates_per_io_bit=_num(d, "gates_per_io_bit", "quantum", minimum=1),
        factory=factory,
        factories_per_unit=_num(d, "factories_per_unit", "quantum", positive=False, minimum=0),
        throughput_overrides={n: _num(overrides_d, n, "quantum.throughput_overrides") for n in overrides_d},
    )


def _profiles(raw: Dict[str, Any], kinds) -> Tuple[ApplicationProfile, ...]:
    items = raw.get("profiles", [])
    if not isinstance(items, list):
        raise ScenarioValidationError("profiles", "expected a list")
    names = {k.name for k in kinds}
    out = []
    for i, d in enumerate(items):
        path = f"profiles[{i}]"
        d = _obj(d, path)
        name = d.get("name")
        if not isinstance(name, str) or not name:
            raise ScenarioValidationError(f"{path}.name", "expected a non-empty string")
        speedup = _speedup(d.get("speedup"), f"{path}.speedup")
        oracle_d = _obj(d.get("oracle", {}), f"{path}.oracle")
        for kind in oracle_d:
            if kind not in names:
                raise ScenarioValidationError(f"{path}.oracle.{kind}", "unknown operation kind")
        oracle = {k: _num(oracle_d, k, f"{path}.oracle", positive=False, minimum=0) for k in oracle_d}
        if speedup is EXPONENTIAL and any(oracle.values()):
            raise ScenarioValidationError(
                f"{path}.oracle", "oracle budgets are undefined for exponential speedups"
            )
        out.append(
            ApplicationProfile(
                name=name,
                speedup=speedup,
                oracle=oracle,
                input_bits=_num(d, "input_bits", path, positive=False, minimum=0) if "input_bits" in d else 0,
                output_bits=_num(d, "output_bits", path, positive=False, minimum=0) if "output_bits" in d else 0,
                structured=_flag(d, "structured", path),
                data_bound=_flag(d, "data_bound", path),
                notes=str(d.get("notes", "")),
            )
        )
    return tuple(out)


def sweep_values(d: Dict[str, Any], path: str) -> Tuple[float, ...]:
    if "values" in d:
        values = d["values"]
        if not isinstance(values, list) or not values:
            raise ScenarioValidationError(f"{path}.values", "expected a non-empty list of numbers")
        return tuple(_num({"v": v}, "v", f"{path}.values", positive=False) for v in values)
    start = _num(d, "start", path, positive=False)
    stop = _num(d, "stop", path, positive=False)
    if "step" in d:
        step = _num(d, "step", path, positive=False)
        if step == 0 or (stop - start) / step < 0:
            raise ScenarioValidationError(f"{path}.step", "step must move start towards stop")
        count = math.floor((stop - start) / step + 1e-9) + 1
        return tuple(start + i * step for i in range(count))
    num = int(_num(d, "num", path)) if "num" in d else 2
    scale = d.get("scale", "lin")
    if num == 1:
        return (start,)
    if scale == "log":
        if start <= 0 or stop <= 0:
            raise ScenarioValidationError(path, "log sweeps need positive start and stop")
        lo, hi = math.log10(start), math.log10(stop)
        values = [10 ** (lo + (hi - lo) * i / (num - 1)) for i in range(num)]
        values[0], values[-1] = start, stop
        return tuple(values)
    if scale != "lin":
        raise ScenarioValidationError(f"{path}.scale", f"expected lin|log, got {scale!r}")
    return tuple(start + (stop - start) * i / (num - 1) for i in range(num))


SWEEP_OUTPUTS = ("throughput", "m_max", "n_star", "t_star", "units")


def parse_sweep(name: str, d: Dict[str, Any]) -> SweepSpec:
    path = f"sweeps.{name}"
    d = _obj(d, path)
    parameter = d.get("parameter")
    if not isinstance(parameter, str) or not parameter:
        raise ScenarioValidationError(f"{path}.parameter", "expected a dotted parameter path")
    output = d.get("output", "m_max")
    if output not in SWEEP_OUTPUTS:
        raise ScenarioValidationError(f"{path}.output", f"expected one of {'|'.join(SWEEP_OUTPUTS)}")
    return SweepSpec(
        name=name,
        parameter=parameter,
        values=sweep_values(d, path),
        output=output,
        kind=str(d.get("kind", "fp16")),
        k=_num(d, "k", path, minimum=1) if "k" in d else 2,
        machine=d.get("machine"),
        oracle_ops=_num(d, "oracle_ops", path, minimum=1) if "oracle_ops" in d else 1,
    )


def scenario_from_dict(raw: Dict[str, Any]) -> Scenario:
    """Validate a fully merged scenario dictionary."""
    raw = _obj(raw, "<root>")
    time_budget = _num(raw, "time_budget", "")
    speedups_raw = raw.get("speedups")
    if not isinstance(speedups_raw, list) or not speedups_raw:
        raise ScenarioValidationError("speedups", "expected a non-empty list")
    speedups = tuple(_speedup(v, f"speedups[{i}]") for i, v in enumerate(speedups_raw))

    try:
        kinds = _kinds(raw)
        classical_specs = {
            label: _classical_spec(label, d, kinds) for label, d in _obj(raw.get("classical"), "classical").items()
        }
        classical = {
            label: build_classical_machine(model, spec, kinds, label=label)
            for label, (model, spec) in classical_specs.items()
        }
        quantum_spec = _quantum_spec(raw, kinds)
        quantum = build_quantum_machine(quantum_spec, kinds)
    except ScenarioValidationError:
        raise
    except EstimatorError as exc:
        raise ScenarioValidationError("<machines>", str(exc)) from exc

    budget_machine = raw.get("budget_machine")
    if budget_machine not in classical:
        raise ScenarioValidationError("budget_machine", f"unknown classical machine {budget_machine!r}")
    slowdown = _obj(raw.get("slowdown", {}), "slowdown")
    for key in ("reference", "limited"):
        if slowdown.get(key) not in classical:
            raise ScenarioValidationError(f"slowdown.{key}", f"unknown classical machine {slowdown.get(key)!r}")
    if slowdown.get("kind") not in {k.name for k in kinds}:
        raise ScenarioValidationError("slowdown.kind", f"unknown kind {slowdown.get('kind')!r}")
    if classical_specs[slowdown["limited"]][0] != "depth_limited":
        raise ScenarioValidationError("slowdown.limited", "must name a depth_limited machine")

    try:
        profiles = _profiles(raw, kinds)
    except ScenarioValidationError:
        raise
    except EstimatorError as exc:
        raise ScenarioValidationError("profiles", str(exc)) from exc

    sweeps = {name: parse_sweep(name, d) for name, d in _obj(raw.get("sweeps", {}), "sweeps").items()}
    return Scenario(
        raw=raw,
        time_budget=time_budget,
        speedups=speedups,
        kinds=kinds,
        classical_specs=classical_specs,
        classical=classical,
        budget_machine=budget_machine,
        slowdown=dict(slowdown),
        quantum_spec=quantum_spec,
        quantum=quantum,
        use_presets=_flag(raw, "use_presets", "<root>"),
        profiles=profiles,
        sweeps=sweeps,
    )


def default_scenario() -> Scenario:
    return scenario_from_dict(copy.deepcopy(DEFAULT_SCENARIO))


def load_scenario(path: str | Path | None, *, allow_empty: bool = False) -> Scenario:
    """Load ``path`` over the defaults.

    ``path=None`` gives the default scenario.  An empty (or whitespace-only)
    file is accepted as ``{}`` only when ``allow_empty`` is set.
    """
    if path is None:
        return default_scenario()
    p = Path(path)
    if not p.is_file():
        raise ScenarioFileMissing(f"scenario file not found: {p}")
    text = p.read_text(encoding="utf-8")
    if not text.strip():
        if not allow_empty:
            raise ScenarioParseError(f"{p}: empty scenario file (pass --defaults to accept it)")
        override: Any = {}
    else:
        try:
            override = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ScenarioParseError(f"{p}: {exc}") from exc
    if not isinstance(override, dict):
        raise ScenarioParseError(f"{p}: top level must be a JSON object")
    return scenario_from_dict(merge(DEFAULT_SCENARIO, override))


def set_path(raw: Dict[str, Any], dotted: str, value: float) -> Dict[str, Any]:
    """Copy of ``raw`` with the numeric leaf at ``dotted`` replaced by ``value``.

    Raises ``KeyError`` if the path does not exist and ``TypeError`` if it
    does not name a number.
    """
    out = copy.deepcopy(raw)
    node: Any = out
    parts = dotted.split(".")
    for part in parts[:-1]:
        if not isinstance(node, dict) or part not in node:
            raise KeyError(dotted)
        node = node[part]
    leaf = parts[-1]
    if not isinstance(node, dict) or leaf not in node:
        raise KeyError(dotted)
    current = node[leaf]
    if isinstance(current, bool) or not isinstance(current, (int, float)):
        raise TypeError(f"{dotted} is not numeric")
    node[leaf] = value
    return out
