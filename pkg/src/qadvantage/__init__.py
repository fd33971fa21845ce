"""Analytical estimator for practical quantum advantage.

Compares per-operation throughput and I/O bandwidth of a classical chip with
a fault-tolerant quantum machine and derives how large an oracle a
polynomial quantum speedup can afford before its crossover time exceeds a
budget.
"""

from .crossover import (
    EXPONENTIAL,
    CrossoverQuery,
    CrossoverResult,
    classical_runtime,
    crossover_point,
    feasible_call_range,
    op_budget,
    quantum_runtime,
    runtime_curve,
)
from .machines import (
    BINARY,
    CANONICAL_KINDS,
    FP16,
    INT32,
    AsicChipSpec,
    ClassicalMachine,
    DatasheetChipSpec,
    DepthLimitedSpec,
    OperationKind,
    build_classical_machine,
)
from .qarith import FactorySpec, QuantumMachine, QuantumMachineSpec, build_quantum_machine
from .verdict import ApplicationProfile, Category, Verdict, classify, preset_profiles

__version__ = "0.1.0"
