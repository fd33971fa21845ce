"""Classical chip throughput models.

Three ways of turning a chip description into a per-operation-kind rate:

* ``datasheet``: vendor peak rates, halved where the vendor figure assumes a
  50/50 add/multiply mix;
* ``asic``: fill the transistor budget with gate-equivalent execution units,
  one operation per unit per cycle;
* ``depth_limited``: a strictly sequential oracle, ``ops_per_cycle`` at the
  clock frequency regardless of kind.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, Literal, Mapping, Union

from ._exact import as_fraction, product, quotient
from .errors import ConfigurationError


@dataclass(frozen=True)
class OperationKind:
    """An operation class and its cost in each machine model.

    Args:
        name: Identifier used to key throughput tables.
        gate_equivalents: Silicon area of one classical execution unit, in GE.
        quantum_mult_width: Bit width ``N`` fed to the quantum multiplier model.
        datasheet_mix_halving: Whether a vendor rate for this kind counts
            multiply-add as two operations and must be halved.
    """

    name: str
    gate_equivalents: float
    quantum_mult_width: int
    datasheet_mix_halving: bool = True

    def __post_init__(self) -> None:
        if not self.name:
            raise ConfigurationError("operation kind needs a non-empty name")
        if not self.gate_equivalents > 0:
            raise ConfigurationError(
                f"kind {self.name!r}: gate_equivalents must be > 0, got {self.gate_equivalents}"
            )
        if int(self.quantum_mult_width) != self.quantum_mult_width or self.quantum_mult_width < 1:
            raise ConfigurationError(
                f"kind {self.name!r}: quantum_mult_width must be an integer >= 1, "
                f"got {self.quantum_mult_width}"
            )


FP16 = OperationKind("fp16", gate_equivalents=7_000, quantum_mult_width=10)
INT32 = OperationKind("int32", gate_equivalents=18_000, quantum_mult_width=32)
BINARY = OperationKind("binary", gate_equivalents=50, quantum_mult_width=1, datasheet_mix_halving=False)

CANONICAL_KINDS = (FP16, INT32, BINARY)


def _positive(owner: str, **values: float) -> None:
    for name, value in values.items():
        if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
            raise ConfigurationError(f"{owner}.{name} must be a finite number > 0, got {value!r}")


@dataclass(frozen=True)
class DatasheetChipSpec:
    raw_rates: Mapping[str, float]
    io_bandwidth: float

    def __post_init__(self) -> None:
        _positive("datasheet", io_bandwidth=self.io_bandwidth)
        for kind, rate in self.raw_rates.items():
            _positive("datasheet.raw_rates", **{kind: rate})


@dataclass(frozen=True)
class AsicChipSpec:
    transistor_budget: float = 54.2e9
    cycle_time: float = 0.7e-9
    transistors_per_gate: float = 10
    control_overhead_factor: float = 2
    io_bandwidth: float = 10_000e9

    def __post_init__(self) -> None:
        _positive(
            "asic",
            transistor_budget=self.transistor_budget,
            cycle_time=self.cycle_time,
            transistors_per_gate=self.transistors_per_gate,
            control_overhead_factor=self.control_overhead_factor,
            io_bandwidth=self.io_bandwidth,
        )


@dataclass(frozen=True)
class DepthLimitedSpec:
    ops_per_cycle: float = 1
    clock_frequency: float = 2e9
    # Same board as the datasheet GPU; only the compute model changes.
    io_bandwidth: float = 10_000e9

    def __post_init__(self) -> None:
        _positive(
            "depth_limited",
            ops_per_cycle=self.ops_per_cycle,
            clock_frequency=self.clock_frequency,
            io_bandwidth=self.io_bandwidth,
        )


# A100: fp16 tensor-core plus regular pipeline, int32, binary tensor core.
A100_DATASHEET = DatasheetChipSpec(
    raw_rates={"fp16": 312e12 + 78e12, "int32": 19.5e12, "binary": 4_992e12},
    io_bandwidth=10_000e9,
)
A100_CLASS_ASIC = AsicChipSpec()
SEQUENTIAL_2GHZ = DepthLimitedSpec()


@dataclass(frozen=True)
class ClassicalMachine:
    """Derived per-kind throughput table for one classical chip."""

    label: str
    throughput: Dict[str, float] = field(default_factory=dict)
    io_bandwidth: float = 0.0

    def rate(self, kind: Union[str, OperationKind]) -> float:
        name = kind.name if isinstance(kind, OperationKind) else kind
        try:
            return self.throughput[name]
        except KeyError:
            raise ConfigurationError(f"machine {self.label!r} has no rate for kind {name!r}") from None

    def op_time(self, kind: Union[str, OperationKind]) -> float:
        """Seconds per operation, the reciprocal of the kind's throughput."""
        return 1.0 / self.rate(kind)


def datasheet_throughput(spec: DatasheetChipSpec, kind: OperationKind) -> float:
    try:
        raw = spec.raw_rates[kind.name]
    except KeyError:
        raise ConfigurationError(f"datasheet has no raw rate for kind {kind.name!r}") from None
    return raw / 2 if kind.datasheet_mix_halving else raw


def asic_unit_count(spec: AsicChipSpec, kind: OperationKind) -> int:
    """Number of whole execution units of ``kind`` that fit the transistor budget."""
    per_unit = product(kind.gate_equivalents, spec.transistors_per_gate, spec.control_overhead_factor)
    if per_unit <= 0:
        raise ConfigurationError(f"asic: zero transistors per {kind.name} unit")
    return max(0, math.floor(as_fraction(spec.transistor_budget) / per_unit))


def asic_throughput(spec: AsicChipSpec, kind: OperationKind) -> float:
    return quotient(asic_unit_count(spec, kind), spec.cycle_time)


def depth_limited_throughput(spec: DepthLimitedSpec) -> float:
    return float(product(spec.ops_per_cycle, spec.clock_frequency))


def depth_limited_slowdown(reference: ClassicalMachine, spec: DepthLimitedSpec, kind: OperationKind) -> float:
    """How many times slower a sequential oracle runs than ``reference`` for ``kind``."""
    return quotient(reference.rate(kind), product(spec.ops_per_cycle, spec.clock_frequency))


Model = Literal["datasheet", "asic", "depth_limited"]
ChipSpec = Union[DatasheetChipSpec, AsicChipSpec, DepthLimitedSpec]

_SPEC_FOR_MODEL = {
    "datasheet": DatasheetChipSpec,
    "asic": AsicChipSpec,
    "depth_limited": DepthLimitedSpec,
}


def build_classical_machine(
    model: Model,
    spec: ChipSpec,
    kinds: Iterable[OperationKind] = CANONICAL_KINDS,
    label: str | None = None,
) -> ClassicalMachine:
    expected = _SPEC_FOR_MODEL.get(model)
    if expected is None:
        raise ConfigurationError(f"unknown classical model {model!r}; expected one of {sorted(_SPEC_FOR_MODEL)}")
    if not isinstance(spec, expected):
        raise ConfigurationError(
            f"model {model!r} needs a {expected.__name__}, got {type(spec).__name__}"
        )

    table: Dict[str, float] = {}
    for kind in kinds:
        if model == "datasheet":
            table[kind.name] = datasheet_throughput(spec, kind)
        elif model == "asic":
            table[kind.name] = asic_throughput(spec, kind)
        else:
            table[kind.name] = depth_limited_throughput(spec)
    return ClassicalMachine(label=label or model, throughput=table, io_bandwidth=float(spec.io_bandwidth))
