"""Exit criteria for the estimator, one test (or parametrized group) per criterion.

Each check reports through the ``criterion`` fixture; the terminal summary
prints one PASS/FAIL line per criterion.
"""

import math
import os
import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

from qadvantage import crossover as xo
from qadvantage.cli import cmd_budget, cmd_classify, cmd_crossover, cmd_sweep, cmd_throughput, with_binary_override
from qadvantage.machines import FP16, depth_limited_slowdown
from qadvantage.report import display, round_sig
from qadvantage.scenario import SweepSpec, default_scenario
from qadvantage.verdict import Category, classify, preset_profiles

SCENARIO = default_scenario()
GPU = SCENARIO.classical["gpu"]
ASIC = SCENARIO.classical["asic"]
QM = SCENARIO.quantum


def test_c1_gpu_column(criterion):
    expected = {"fp16": 195e12, "int32": 9.75e12, "binary": 4_992e12}
    ok = all(GPU.rate(k) == v for k, v in expected.items()) and GPU.io_bandwidth == 10_000e9
    ok &= all(display(GPU.rate(k), "op/s", si=True) == display(v, "op/s", si=True) for k, v in expected.items())
    detail = ", ".join(f"{k} {display(GPU.rate(k), 'op/s', si=True)}" for k in expected)
    criterion("C1", ok, f"GPU {detail}, I/O {display(GPU.io_bandwidth, 'bit/s', si=True)}")


@pytest.mark.parametrize("kind, published", [("fp16", 0.55e15), ("int32", 0.22e15), ("binary", 77.4e15)])
def test_c2_asic_column(criterion, kind, published):
    got = ASIC.rate(kind)
    rel = abs(got - published) / published
    criterion("C2", rel <= 0.02, f"ASIC {kind} {got:.6g} op/s vs {published:.3g} ({rel:+.2%} off, tolerance 2%)")


def test_c3_quantum_rates(criterion):
    fp16, int32, io = QM.rate("fp16"), QM.rate("int32"), QM.io_bandwidth
    ok = fp16 == 10_500 and round_sig(int32) == 830 and io == 1e9
    criterion("C3", ok, f"fp16 {fp16!r} op/s, int32 {int32!r} op/s (displays {display(int32, 'op/s', si=True)}), I/O {io!r} bit/s")


def test_c4_binary_rate_and_override(criterion):
    model = QM.rate("binary")
    notes = " ".join(QM.diagnostics.get("binary", ()))
    report = cmd_throughput(SCENARIO).text
    overridden = with_binary_override(SCENARIO).quantum.rate("binary")
    ok = model == 2.3e6 and "235 kop/s" in notes and "235 kop/s" in report and overridden == 235e3
    criterion("C4", ok, f"model {model!r} op/s, annotation present={'235 kop/s' in report}, override {overridden!r} op/s")


TABLE2 = {
    ("fp16", 2): 0.2, ("int32", 2): 0.003, ("binary", 2): 68,
    ("fp16", 3): 45_800, ("int32", 3): 1_630, ("binary", 3): 12_500_000,
    ("fp16", 4): 2_800_000, ("int32", 4): 130_000, ("binary", 4): 712_000_000,
}


@pytest.mark.parametrize("kind, k", sorted(TABLE2))
def test_c5_budget_table(criterion, kind, k):
    got = xo.op_budget(k, ASIC.op_time(kind), QM.op_time(kind), SCENARIO.time_budget)
    published = TABLE2[(kind, k)]
    rel = abs(got - published) / published
    criterion("C5", rel <= 0.05, f"{kind} k={k}: {got:.6g} vs {published:g} ({rel:+.2%} off, tolerance 5%)")


def test_c6_crossover_magnitude(criterion):
    n_min, _, _ = xo.feasible_call_range(2, ASIC.op_time("fp16"), QM.op_time("fp16"), 1)
    ok = n_min > 1e10 and float(f"{n_min:.1e}") == 5.3e10
    criterion("C6", ok, f"fp16 k=2 n_min = {n_min:.4g}")


def _random_query(rng):
    """Valid (k, t_c, t_q, T) whose crossover stays inside double range.

    The crossover call count is drawn first (log-uniform up to 1e43) so that
    k arbitrarily close to 1 does not push n_star past float overflow.
    """
    k = 1 + 5 * (1 - rng.random())
    log_nstar = rng.uniform(1e-3, 100)
    t_c = 10 ** rng.uniform(-18, -6)
    t_q = t_c * math.exp(log_nstar * (k - 1))
    budget = 10 ** rng.uniform(0, 9)
    return k, t_c, t_q, budget


def test_c7_duality_suite(criterion):
    rng = random.Random(20240601)
    worst = {"collapse": 0.0, "equality": 0.0}
    bad_crossings = 0
    for _ in range(1000):
        k, t_c, t_q, budget = _random_query(rng)
        m = xo.op_budget(k, t_c, t_q, budget)
        n_min, n_max, _ = xo.feasible_call_range(k, t_c, t_q, m, budget)
        worst["collapse"] = max(worst["collapse"], abs(n_min - n_max) / n_min)
        n_star, _ = xo.crossover_point(k, t_c, t_q, 1)
        tc, tq = xo.classical_runtime(n_star, k, 1, t_c), xo.quantum_runtime(n_star, 1, t_q)
        worst["equality"] = max(worst["equality"], abs(tc - tq) / tq)
        grid = xo.log_grid(n_star / 1e3, n_star * 1e3, 40)
        diffs = [r.t_classical - r.t_quantum for r in xo.runtime_curve(k, t_c, t_q, 1, grid) if not r.is_crossover]
        signs = [d > 0 for d in diffs]
        bad_crossings += sum(a != b for a, b in zip(signs, signs[1:])) != 1
    ok = worst["collapse"] < 1e-9 and worst["equality"] < 1e-9 and bad_crossings == 0
    criterion(
        "C7",
        ok,
        f"1000 draws: max collapse {worst['collapse']:.1e}, max T_c/T_q mismatch {worst['equality']:.1e}, "
        f"curves without exactly one sign change: {bad_crossings}",
    )


def test_c8_monotonicity_suite(criterion):
    rng = random.Random(7)
    violations = 0
    for _ in range(1000):
        k, t_c, t_q, budget = _random_query(rng)
        base = xo.op_budget(k, t_c, t_q, budget)
        f = 1 + rng.uniform(0.01, 1)
        ratio = t_q / t_c
        violations += not xo.op_budget(k, t_c * min(f, ratio), t_q, budget) > base
        violations += not xo.op_budget(k, t_c, t_q, budget * f) > base
        violations += not xo.op_budget(k, t_c, t_q * f, budget) < base
        b2, b3, b4 = (xo.op_budget(kk, t_c, t_q, budget) for kk in (2, 3, 4))
        violations += not (b2 < b3 < b4)
    criterion("C8", violations == 0, f"4000 randomized comparisons, {violations} violations")


def test_c9_classifier_golden(criterion):
    got = {p.name: classify(p, QM, ASIC, SCENARIO.time_budget).category for p in preset_profiles()}
    expected = {
        "Quantum chemistry and materials simulation": Category.PROMISING,
        "Shor cryptanalysis": Category.PROMISING,
        "Grover search": Category.IMPRACTICAL,
        "Drug design (Grover)": Category.IMPRACTICAL,
        "Protein folding (Grover)": Category.IMPRACTICAL,
        "Monte Carlo via quantum walks": Category.IMPRACTICAL,
        "Machine learning training": Category.IMPRACTICAL,
        "Turbulent fluid dynamics": Category.IMPRACTICAL,
        "Weather and climate simulation": Category.IMPRACTICAL,
        "Database search (Grover)": Category.IO_BOUND,
        "Big data analytics": Category.IO_BOUND,
    }
    wrong = {n: got.get(n) for n, c in expected.items() if got.get(n) is not c}
    criterion("C9", not wrong, f"{len(expected) - len(wrong)}/{len(expected)} presets as expected {wrong or ''}".rstrip())


def test_c10_depth_limited_slowdown(criterion):
    spec = SCENARIO.classical_specs["depth_limited"][1]
    slowdown = depth_limited_slowdown(GPU, spec, FP16)
    criterion("C10", slowdown == 97_500, f"GPU fp16 / sequential 2 GHz = {slowdown!r}")


_COMMANDS = [
    ["throughput"],
    ["budget"],
    ["crossover", "--kind", "fp16", "--k", "2"],
    ["classify", "--presets"],
    ["sweep", "--param", "quantum.cycle_time", "--start", "1e-5", "--stop", "1e-7", "--num", "5", "--scale", "log"],
]

_DRIVER = """
import sys
from qadvantage.cli import main
out = sys.argv[1]
cmds = {cmds!r}
for i, cmd in enumerate(cmds):
    for fmt in ("text", "json", "csv"):
        assert main(["--defaults", "--format", fmt, "--out", f"{{out}}/{{i}}.{{fmt}}", *cmd]) == 0
"""


def test_c11_determinism(criterion, tmp_path):
    runs = []
    for seed in ("1", "2"):
        out = tmp_path / seed
        out.mkdir()
        env = dict(os.environ, PYTHONHASHSEED=seed)
        subprocess.run([sys.executable, "-c", _DRIVER.format(cmds=_COMMANDS), str(out)], check=True, env=env)
        runs.append({p.name: p.read_bytes() for p in sorted(out.iterdir())})
    same = runs[0] == runs[1] and len(runs[0]) == 3 * len(_COMMANDS)
    criterion("C11", same, f"{len(runs[0])} outputs (5 commands x 3 formats) byte-identical across two processes")


def test_commands_run_fast():
    start = time.perf_counter()
    cmd_throughput(SCENARIO)
    cmd_budget(SCENARIO)
    cmd_crossover(SCENARIO, "fp16", 2)
    cmd_classify(SCENARIO, presets=True)
    cmd_sweep(SCENARIO, SweepSpec("s", "quantum.cycle_time", (1e-5, 1e-6, 1e-7)))
    assert time.perf_counter() - start < 1.0
