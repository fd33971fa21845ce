"""Practicality verdicts for candidate quantum applications.

A profile goes through three checks in order:

1. I/O: can the quantum machine even move the problem's data in and out
   fast enough?
2. Black-box cap: an unstructured problem cannot claim more than a quartic
   speedup, so larger claimed exponents are cut back to 4.
3. Budget: for polynomial speedups, every operation kind in the oracle must
   fit that kind's crossover budget, and the whole mixed oracle must cross
   over inside the time budget.

Every finding keeps the numbers that produced it so a verdict can be
audited without rerunning the model.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Mapping, Optional, Tuple

from .crossover import (
    DEFAULT_TIME_BUDGET,
    EXPONENTIAL,
    SpeedupExponent,
    is_exponential,
    op_budget,
    oracle_op_time,
)
from .errors import ConfigurationError
from .machines import ClassicalMachine
from .qarith import QuantumMachine

BLACKBOX_MAX_EXPONENT = 4.0


class Category(str, enum.Enum):
    PROMISING = "Promising"
    IMPRACTICAL = "Impractical"
    IO_BOUND = "IOBound"
    NEEDS_DETAILED_MODEL = "NeedsDetailedModel"


@dataclass(frozen=True)
class ApplicationProfile:
    """A candidate application as seen by the classifier.

    Args:
        name: Display name, also the sort key of reports.
        speedup: Polynomial exponent ``k`` or ``EXPONENTIAL``.
        oracle: Operation count per oracle call, keyed by kind name.
        input_bits: Classical data that must be loaded into the machine.
        output_bits: Classical data that must be read back out.
        structured: The algorithm exploits problem structure, so the
            black-box exponent cap does not apply.
        data_bound: The classical solution is itself limited by data access
            (a scan over the input), so classical solve time is estimated by
            its I/O time.
        notes: Free text carried into reports.
    """

    name: str
    speedup: SpeedupExponent
    oracle: Mapping[str, float] = field(default_factory=dict)
    input_bits: float = 0
    output_bits: float = 0
    structured: bool = False
    data_bound: bool = False
    notes: str = ""

    def __post_init__(self) -> None:
        if not self.name:
            raise ConfigurationError("application profile needs a name")
        if self.input_bits < 0 or self.output_bits < 0:
            raise ConfigurationError(f"profile {self.name!r}: data volumes must be >= 0")
        for kind, count in self.oracle.items():
            if count < 0:
                raise ConfigurationError(f"profile {self.name!r}: oracle.{kind} must be >= 0")

    @property
    def data_bits(self) -> float:
        return self.input_bits + self.output_bits


@dataclass(frozen=True)
class Finding:
    code: str
    message: str
    values: Dict[str, Any] = field(default_factory=dict)
    fired: bool = True


@dataclass(frozen=True)
class Verdict:
    profile: str
    category: Category
    rationale: Tuple[Finding, ...]
    effective_speedup: SpeedupExponent


def io_bound_check(
    p: ApplicationProfile,
    qm: QuantumMachine,
    cm: ClassicalMachine,
    time_budget: float = DEFAULT_TIME_BUDGET,
) -> Finding:
    """Decide whether moving the profile's data dominates the quantum run.

    Fires when loading and reading out the data alone uses up the whole time
    budget, or when the classical solver is itself data-access bound and
    the quantum machine moves the same bits more slowly.
    """
    bits = p.data_bits
    t_quantum = bits / qm.io_bandwidth
    t_classical = bits / cm.io_bandwidth
    values = {
        "data_bits": bits,
        "quantum_io_bandwidth": qm.io_bandwidth,
        "classical_io_bandwidth": cm.io_bandwidth,
        "quantum_data_time_s": t_quantum,
        "classical_data_time_s": t_classical,
        "time_budget_s": time_budget,
    }
    if bits == 0:
        return Finding("io", "no classical data to move", values, fired=False)
    if t_quantum >= time_budget:
        return Finding(
            "io",
            f"quantum data movement takes {t_quantum:.3g} s, at or beyond the {time_budget:.3g} s budget "
            f"(classical: {t_classical:.3g} s)",
            values,
        )
    if p.data_bound and t_quantum > t_classical:
        return Finding(
            "io",
            f"classical solve is data-access bound at {t_classical:.3g} s; quantum data movement alone "
            f"takes {t_quantum:.3g} s",
            values,
        )
    return Finding(
        "io",
        f"quantum data movement {t_quantum:.3g} s fits the {time_budget:.3g} s budget",
        values,
        fired=False,
    )


def blackbox_cap(p: ApplicationProfile) -> Tuple[ApplicationProfile, Optional[Finding]]:
    if is_exponential(p.speedup) or p.structured or p.speedup <= BLACKBOX_MAX_EXPONENT:
        return p, None
    finding = Finding(
        "blackbox_cap",
        f"unstructured black-box speedup cannot exceed k={BLACKBOX_MAX_EXPONENT:g}; "
        f"claimed k={p.speedup:g} capped (exploit problem structure to go beyond)",
        {"claimed_k": p.speedup, "capped_k": BLACKBOX_MAX_EXPONENT},
    )
    return replace(p, speedup=BLACKBOX_MAX_EXPONENT), finding


def _budget_findings(
    p: ApplicationProfile, qm: QuantumMachine, cm: ClassicalMachine, time_budget: float
) -> Tuple[bool, List[Finding]]:
    k = p.speedup
    findings: List[Finding] = []
    fits = True
    worst_budget = math.inf
    for kind in sorted(p.oracle):
        count = p.oracle[kind]
        if not count:
            continue
        t_c, t_q = cm.op_time(kind), qm.op_time(kind)
        m_max = 0.0 if math.isinf(t_q) else op_budget(k, t_c, t_q, time_budget)
        worst_budget = min(worst_budget, m_max)
        ok = count <= m_max
        fits &= ok
        findings.append(
            Finding(
                f"budget.{kind}",
                f"{kind}: oracle uses {count:.3g} ops, crossover budget at k={k:g} is {m_max:.3g} "
                f"({'within' if ok else 'exceeds'} budget)",
                {"kind": kind, "oracle_ops": count, "m_max": m_max, "k": k, "t_c": t_c, "t_q": t_q},
                fired=not ok,
            )
        )

    tau_c = oracle_op_time(p.oracle, cm.op_time)
    tau_q = oracle_op_time(p.oracle, qm.op_time)
    if math.isinf(tau_q):
        t_star = math.inf
    elif tau_q <= tau_c:
        t_star = tau_q
    else:
        t_star = (tau_q / tau_c) ** (1 / (k - 1)) * tau_q
    combined_ok = t_star <= time_budget
    fits &= combined_ok
    findings.append(
        Finding(
            "budget.combined",
            f"whole oracle costs {tau_c:.3g} s classical vs {tau_q:.3g} s quantum per call; "
            f"crossover time {t_star:.3g} s vs budget {time_budget:.3g} s",
            {
                "classical_oracle_time_s": tau_c,
                "quantum_oracle_time_s": tau_q,
                "crossover_time_s": t_star,
                "time_budget_s": time_budget,
            },
            fired=not combined_ok,
        )
    )

    if k <= 2 and worst_budget < 1:
        findings.append(
            Finding(
                "quadratic",
                f"quadratic speedups are insufficient: budget {worst_budget:.3g} < 1 operation per oracle call",
                {"k": k, "m_max": worst_budget},
            )
        )
    return fits, findings


def classify(
    p: ApplicationProfile,
    qm: QuantumMachine,
    cm: ClassicalMachine,
    time_budget: float = DEFAULT_TIME_BUDGET,
) -> Verdict:
    if is_exponential(p.speedup) and any(p.oracle.values()):
        raise ConfigurationError(
            f"profile {p.name!r}: oracle budgets are undefined for exponential speedups; drop the oracle counts"
        )
    for kind in p.oracle:
        cm.rate(kind)
        qm.rate(kind)

    findings: List[Finding] = []
    io = io_bound_check(p, qm, cm, time_budget)
    findings.append(io)

    if is_exponential(p.speedup):
        category = Category.PROMISING
        findings.append(
            Finding(
                "exponential",
                "exponential speedup leaves ample operation budget for every data type",
                {"m_max": math.inf},
            )
        )
        findings.append(
            Finding(
                "needs_detailed_model",
                "rough bound only; confirm with a full resource estimate before committing",
                {},
                fired=False,
            )
        )
        effective = EXPONENTIAL
    else:
        capped, cap_finding = blackbox_cap(p)
        if cap_finding is not None:
            findings.append(cap_finding)
        effective = capped.speedup
        if not any(capped.oracle.values()):
            category = Category.NEEDS_DETAILED_MODEL
            findings.append(Finding("oracle_missing", "no oracle operation counts; cannot compare against budgets", {}))
        else:
            fits, budget = _budget_findings(capped, qm, cm, time_budget)
            findings.extend(budget)
            category = Category.PROMISING if fits else Category.IMPRACTICAL

    if io.fired:
        category = Category.IO_BOUND
    return Verdict(profile=p.name, category=category, rationale=tuple(findings), effective_speedup=effective)


# Oracle sizes below are illustrative lower bounds: small next to any real
# workload, yet already past the quadratic budgets.
_PRESETS = (
    ApplicationProfile(
        "Shor cryptanalysis",
        EXPONENTIAL,
        input_bits=2048,
        output_bits=2048,
        structured=True,
        notes="factoring an RSA-2048 modulus",
    ),
    ApplicationProfile(
        "Quantum chemistry and materials simulation",
        EXPONENTIAL,
        input_bits=1e6,
        output_bits=1e3,
        structured=True,
        notes="Hamiltonian given by a compact description; energies sampled out",
    ),
    ApplicationProfile(
        "Structured linear systems",
        EXPONENTIAL,
        input_bits=1e4,
        output_bits=1e3,
        structured=True,
        notes="matrix computed from limited data, solution only sampled; I/O-sensitive",
    ),
    ApplicationProfile(
        "Unstructured linear systems",
        EXPONENTIAL,
        input_bits=6.4e13,
        output_bits=6.4e7,
        structured=False,
        data_bound=True,
        notes="dense 1e6 x 1e6 fp64 matrix loaded from memory, full solution read out",
    ),
    ApplicationProfile(
        "Grover search",
        2,
        oracle={"binary": 1_000},
        input_bits=64,
        notes="search over an implicitly defined space",
    ),
    ApplicationProfile("Drug design (Grover)", 2, oracle={"fp16": 10_000}, input_bits=1e6),
    ApplicationProfile("Protein folding (Grover)", 2, oracle={"fp16": 100_000}, input_bits=1e5),
    ApplicationProfile("Monte Carlo via quantum walks", 2, oracle={"fp16": 1_000}, input_bits=1e3),
    ApplicationProfile("Machine learning training", 2, oracle={"fp16": 1e6}, input_bits=1e8),
    ApplicationProfile("Turbulent fluid dynamics", 2, oracle={"fp16": 10_000}, input_bits=1e6),
    ApplicationProfile("Weather and climate simulation", 2, oracle={"fp16": 1e6}, input_bits=1e8),
    ApplicationProfile(
        "Database search (Grover)",
        2,
        oracle={"binary": 100},
        input_bits=1e15,
        data_bound=True,
        notes="unstructured search over a stored database",
    ),
    ApplicationProfile(
        "Big data analytics",
        2,
        oracle={"fp16": 100},
        input_bits=1e16,
        data_bound=True,
    ),
)


def preset_profiles() -> List[ApplicationProfile]:
    return list(_PRESETS)
