"""Runtime crossover algebra for polynomial quantum speedups.

With ``N`` oracle calls of ``M`` operations each, a classical machine needs
``N**k`` calls and a quantum machine ``N``::

    T_c = N**k * M * t_c
    T_q = N    * M * t_q

Requiring the quantum run to beat the classical one and to finish within a
time budget ``T`` bounds ``N`` from both sides::

    (t_q / t_c) ** (1/(k-1))  <=  N  <=  T / (t_q * M)

and where the two bounds meet gives the largest affordable oracle::

    M_max = T * (t_c / t_q**k) ** (1/(k-1))

Powers are evaluated in log space so extreme rate ratios neither overflow
nor lose relative precision.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, List, Mapping, Optional, Sequence, Union

from .errors import DomainError, InputError, UnsupportedError

DEFAULT_TIME_BUDGET = 1e6


class Speedup(enum.Enum):
    EXPONENTIAL = "exponential"


EXPONENTIAL = Speedup.EXPONENTIAL

SpeedupExponent = Union[float, Speedup]


def is_exponential(k: SpeedupExponent) -> bool:
    return k is EXPONENTIAL


def _poly_k(k: SpeedupExponent) -> float:
    if is_exponential(k):
        raise UnsupportedError("exponential speedups have no polynomial runtime form")
    if isinstance(k, bool) or not isinstance(k, (int, float)):
        raise DomainError(f"speedup exponent must be a real number, got {k!r}")
    if not math.isfinite(k) or k <= 1:
        raise DomainError(f"polynomial speedup needs k > 1, got {k!r}")
    return float(k)


def _require_positive(**values: float) -> None:
    for name, value in values.items():
        if not (value > 0 and math.isfinite(value)):
            raise DomainError(f"{name} must be a finite number > 0, got {value!r}")


def classical_runtime(n: float, k: SpeedupExponent, m: float, t_c: float) -> float:
    k = _poly_k(k)
    if n < 0:
        raise DomainError(f"call count must be >= 0, got {n!r}")
    return n**k * m * t_c


def quantum_runtime(n: float, m: float, t_q: float) -> float:
    if n < 0:
        raise DomainError(f"call count must be >= 0, got {n!r}")
    return n * m * t_q


def _root_ratio(k: float, num: float, den: float) -> float:
    """``(num / den) ** (1/(k-1))`` in log space."""
    try:
        return math.exp((math.log(num) - math.log(den)) / (k - 1))
    except OverflowError:
        return math.inf


def op_budget(k: SpeedupExponent, t_c: float, t_q: float, time_budget: float = DEFAULT_TIME_BUDGET) -> float:
    """Largest oracle size (operations per call) that still crosses over within ``time_budget``.

    Values below 1 mean that not even a single-operation oracle pays off.
    Exponential speedups are unbounded within this model and return ``inf``.
    """
    if is_exponential(k):
        return math.inf
    k = _poly_k(k)
    _require_positive(t_c=t_c, t_q=t_q, time_budget=time_budget)
    log_m = math.log(time_budget) + (math.log(t_c) - k * math.log(t_q)) / (k - 1)
    try:
        return math.exp(log_m)
    except OverflowError:
        return math.inf


def feasible_call_range(
    k: SpeedupExponent,
    t_c: float,
    t_q: float,
    m: float,
    time_budget: float = DEFAULT_TIME_BUDGET,
) -> tuple[float, float, bool]:
    """Return ``(n_min, n_max, feasible)`` for oracle size ``m``."""
    k = _poly_k(k)
    _require_positive(t_c=t_c, t_q=t_q, m=m, time_budget=time_budget)
    n_min = _root_ratio(k, t_q, t_c)
    n_max = time_budget / (t_q * m)
    return n_min, n_max, n_min <= n_max


def crossover_point(k: SpeedupExponent, t_c: float, t_q: float, m: float) -> tuple[float, float]:
    """Return ``(n_star, t_star)`` where classical and quantum runtimes are equal."""
    k = _poly_k(k)
    _require_positive(t_c=t_c, t_q=t_q, m=m)
    n_star = _root_ratio(k, t_q, t_c)
    return n_star, n_star * m * t_q


@dataclass(frozen=True)
class CurveRow:
    n: float
    t_classical: float
    t_quantum: float
    is_crossover: bool = False


def runtime_curve(k: SpeedupExponent, t_c: float, t_q: float, m: float, n_grid: Sequence[float]) -> List[CurveRow]:
    """Classical and quantum runtimes over ``n_grid`` plus one marker row at the crossover.

    The marker is inserted in ascending position, after any grid point equal
    to it, so the output always has ``len(n_grid) + 1`` rows.
    """
    if len(n_grid) == 0:
        raise InputError("n_grid must not be empty")
    for a in n_grid:
        if not (a > 0 and math.isfinite(a)):
            raise InputError(f"n_grid values must be finite and > 0, got {a!r}")
    for a, b in zip(n_grid, n_grid[1:]):
        if b < a:
            raise InputError("n_grid must be sorted ascending")
    n_star, _ = crossover_point(k, t_c, t_q, m)

    rows = [CurveRow(n, classical_runtime(n, k, m, t_c), quantum_runtime(n, m, t_q)) for n in n_grid]
    marker = CurveRow(n_star, classical_runtime(n_star, k, m, t_c), quantum_runtime(n_star, m, t_q), True)
    pos = next((i for i, r in enumerate(rows) if r.n > n_star), len(rows))
    rows.insert(pos, marker)
    return rows


def log_grid(start: float, stop: float, points: int) -> List[float]:
    """``points`` logarithmically spaced values from ``start`` to ``stop`` inclusive."""
    if points < 1:
        raise InputError("grid needs at least one point")
    _require_positive(start=start, stop=stop)
    if points == 1:
        return [float(start)]
    lo, hi = math.log10(start), math.log10(stop)
    step = (hi - lo) / (points - 1)
    return [10 ** (lo + i * step) for i in range(points)]


def oracle_op_time(counts: Mapping[str, float], op_time) -> float:
    """Seconds per oracle call when the oracle mixes operation kinds.

    Under the depth-one oracle assumption every kind runs on its own units
    at full rate, so per-kind costs add: sum of ``count / throughput``.
    ``op_time`` maps a kind name to seconds per operation.
    """
    return sum(count * op_time(kind) for kind, count in counts.items() if count)


@dataclass(frozen=True)
class CrossoverResult:
    m_max: float
    m_max_floor: Optional[int]
    n_min: float
    n_max: float
    feasible: bool
    n_star: float
    t_star: float
    within_budget: bool
    quantum_faster_per_op: bool = False


@dataclass(frozen=True)
class CrossoverQuery:
    """One (k, t_c, t_q, T, M) question with all derived quantities.

    The model addresses ``t_q > t_c``.  When the quantum machine is at least
    as fast per operation, it wins from the first call, so the query
    short-circuits to ``n_min = n_star = 1`` and reports feasibility for any
    ``N >= 1``.
    """

    k: SpeedupExponent
    t_c: float
    t_q: float
    oracle_ops: float = 1
    time_budget: float = DEFAULT_TIME_BUDGET

    def __post_init__(self) -> None:
        _poly_k(self.k)
        _require_positive(t_c=self.t_c, t_q=self.t_q, time_budget=self.time_budget)
        if not self.oracle_ops >= 1:
            raise DomainError(f"oracle_ops must be >= 1, got {self.oracle_ops!r}")

    @property
    def quantum_faster_per_op(self) -> bool:
        return self.t_q <= self.t_c

    def solve(self) -> CrossoverResult:
        m = self.oracle_ops
        if self.quantum_faster_per_op:
            n_max = self.time_budget / (self.t_q * m)
            t_star = m * self.t_q
            m_max = self.time_budget / self.t_q
            return CrossoverResult(
                m_max=m_max,
                m_max_floor=_floor_count(m_max),
                n_min=1.0,
                n_max=n_max,
                feasible=True,
                n_star=1.0,
                t_star=t_star,
                within_budget=t_star <= self.time_budget,
                quantum_faster_per_op=True,
            )
        m_max = op_budget(self.k, self.t_c, self.t_q, self.time_budget)
        n_min, n_max, feasible = feasible_call_range(self.k, self.t_c, self.t_q, m, self.time_budget)
        n_star, t_star = crossover_point(self.k, self.t_c, self.t_q, m)
        return CrossoverResult(
            m_max=m_max,
            m_max_floor=_floor_count(m_max),
            n_min=n_min,
            n_max=n_max,
            feasible=feasible,
            n_star=n_star,
            t_star=t_star,
            within_budget=t_star <= self.time_budget,
        )


def _floor_count(x: float) -> Optional[int]:
    return math.floor(x) if math.isfinite(x) else None


def budget_table(
    kinds: Iterable[str],
    exponents: Iterable[SpeedupExponent],
    classical_op_time,
    quantum_op_time,
    time_budget: float = DEFAULT_TIME_BUDGET,
) -> dict:
    """``{(kind, k): m_max}`` for every pair; op-time callables map kind name to seconds."""
    exponents = list(exponents)
    return {
        (kind, k): op_budget(k, classical_op_time(kind), quantum_op_time(kind), time_budget)
        for kind in kinds
        for k in exponents
    }
