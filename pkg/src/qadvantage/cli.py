"""Estimate when a fault-tolerant quantum computer can beat a classical chip.

Verbs::

    throughput   per-kind throughput and I/O bandwidth of every machine
    budget       maximum oracle size per (kind, speedup exponent)
    crossover    classical/quantum runtime curve around the crossover point
    classify     practicality verdict per application profile
    sweep        re-derive one quantity across a parameter range

Exit status: 0 success, 2 usage error, 3 scenario file missing,
4 scenario parse error, 5 scenario validation / configuration error.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from . import crossover as xo
from .errors import ConfigurationError, DomainError, EstimatorError, InputError, UnsupportedError
from .machines import depth_limited_slowdown
from .qarith import REFERENCE_BINARY_THROUGHPUT
from .report import ReportRow, csv_text, display, dumps_json, grid_text, rows_csv
from .scenario import (
    SWEEP_OUTPUTS,
    Scenario,
    ScenarioFileMissing,
    ScenarioParseError,
    ScenarioValidationError,
    SweepSpec,
    load_scenario,
    merge,
    parse_sweep,
    scenario_from_dict,
    set_path,
)
from .verdict import classify

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_MISSING = 3
EXIT_PARSE = 4
EXIT_VALIDATION = 5

_K_NAMES = {2: "quadratic", 3: "cubic", 4: "quartic"}


class UsageError(EstimatorError):
    pass


@dataclass
class Output:
    text: str
    csv: str
    data: Dict[str, Any]
    # Human-readable summary sent to stderr when the main output is CSV.
    summary: str = ""

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return dumps_json(self.data)
        if fmt == "csv":
            return self.csv
        return self.text


def _k_label(k) -> str:
    if xo.is_exponential(k):
        return "exponential"
    return _K_NAMES.get(k, f"k={k:g}")


def with_binary_override(scenario: Scenario) -> Scenario:
    raw = merge(scenario.raw, {"quantum": {"throughput_overrides": {"binary": REFERENCE_BINARY_THROUGHPUT}}})
    return scenario_from_dict(raw)


def cmd_throughput(scenario: Scenario) -> Output:
    machines = list(scenario.classical.values())
    qm = scenario.quantum
    rows: List[ReportRow] = []
    for kind in scenario.kinds:
        for cm in machines:
            v = cm.rate(kind)
            rows.append(ReportRow(cm.label, kind.name, "op/s", v, display(v, "op/s", si=True)))
        v = qm.rate(kind)
        note = "; ".join(qm.diagnostics.get(kind.name, ()))
        rows.append(ReportRow(qm.label, kind.name, "op/s", v, display(v, "op/s", si=True), note))
    for m in [*machines, qm]:
        rows.append(ReportRow(m.label, "io_bandwidth", "bit/s", m.io_bandwidth, display(m.io_bandwidth, "bit/s", si=True)))

    ref = scenario.classical[scenario.slowdown["reference"]]
    limited_spec = scenario.classical_specs[scenario.slowdown["limited"]][1]
    slow_kind = scenario.kind(scenario.slowdown["kind"])
    slowdown = depth_limited_slowdown(ref, limited_spec, slow_kind)

    labels = [m.label for m in machines] + [qm.label]
    by_key = {(r.label, r.quantity): r for r in rows}
    lines = [[k.name] + [by_key[(lab, k.name)].display for lab in labels] for k in scenario.kinds]
    lines.append(["I/O bandwidth"] + [by_key[(lab, "io_bandwidth")].display for lab in labels])
    text = grid_text("Peak operation throughput and I/O bandwidth", labels, lines)
    text += (
        f"depth-limited slowdown ({slow_kind.name}, {ref.label} vs {scenario.slowdown['limited']}): "
        f"{display(slowdown)}x\n"
    )
    for r in rows:
        if r.note:
            text += f"note [{r.label} {r.quantity}]: {r.note}\n"

    layouts = {
        name: {
            "qubits_per_unit": lay.qubits_per_unit,
            "units": lay.units,
            "cycles_per_op": lay.cycles_per_op,
            "ccz_count": lay.multiplier.ccz_count,
            "data_qubits": lay.multiplier.data_qubits,
        }
        for name, lay in qm.layouts.items()
    }
    data = {
        "command": "throughput",
        "rows": [r.as_dict() for r in rows],
        "quantum_layouts": layouts,
        "depth_limited_slowdown": {
            "kind": slow_kind.name,
            "reference": ref.label,
            "limited": scenario.slowdown["limited"],
            "value": slowdown,
        },
    }
    return Output(text=text, csv=rows_csv(rows), data=data)


def _budget_machine(scenario: Scenario, machine: Optional[str]):
    label = machine or scenario.budget_machine
    try:
        return scenario.classical[label]
    except KeyError:
        raise UsageError(f"unknown classical machine {label!r}; have {', '.join(scenario.classical)}") from None


def cmd_budget(scenario: Scenario, machine: Optional[str] = None) -> Output:
    cm = _budget_machine(scenario, machine)
    qm = scenario.quantum
    exps = [k for k in scenario.speedups]
    rows: List[ReportRow] = []
    floors = []
    for kind in scenario.kinds:
        for k in exps:
            t_q = qm.op_time(kind)
            m_max = 0.0 if math.isinf(t_q) else xo.op_budget(k, cm.op_time(kind), t_q, scenario.time_budget)
            note = f"{math.floor(m_max)} whole ops" if math.isfinite(m_max) else "unbounded"
            rows.append(ReportRow(_k_label(k), kind.name, "ops/oracle", m_max, display(m_max), note))
            floors.append(math.floor(m_max) if math.isfinite(m_max) else None)
    cols = [_k_label(k) for k in exps]
    by_key = {(r.label, r.quantity): r for r in rows}
    lines = [[kind.name] + [by_key[(c, kind.name)].display for c in cols] for kind in scenario.kinds]
    text = grid_text(
        f"Maximum operations per oracle call (crossover within {display(scenario.time_budget)} s, "
        f"classical: {cm.label}, quantum: {qm.label})",
        cols,
        lines,
    )
    data = {
        "command": "budget",
        "classical_machine": cm.label,
        "time_budget_s": scenario.time_budget,
        "rows": [dict(r.as_dict(), m_max_floor=f) for r, f in zip(rows, floors)],
    }
    return Output(text=text, csv=rows_csv(rows), data=data)


def cmd_crossover(
    scenario: Scenario,
    kind: str,
    k: float,
    oracle_ops: float = 1,
    grid: Optional[Sequence[float]] = None,
    machine: Optional[str] = None,
    points: int = 10,
) -> Output:
    cm = _budget_machine(scenario, machine)
    op = scenario.kind(kind)
    t_c, t_q = cm.op_time(op), scenario.quantum.op_time(op)
    if math.isinf(t_q):
        raise ConfigurationError(f"no {kind} unit fits the quantum machine")
    query = xo.CrossoverQuery(k=k, t_c=t_c, t_q=t_q, oracle_ops=oracle_ops, time_budget=scenario.time_budget)
    res = query.solve()
    if grid is None:
        # An even point count keeps n_star off the grid itself.
        grid = xo.log_grid(res.n_star / 100, res.n_star * 100, points)
    rows = xo.runtime_curve(k, t_c, t_q, oracle_ops, list(grid))
    exceeds = res.t_star > scenario.time_budget

    summary = {
        "kind": kind,
        "k": k,
        "oracle_ops": oracle_ops,
        "classical_machine": cm.label,
        "t_c": t_c,
        "t_q": t_q,
        "n_star": res.n_star,
        "t_star_s": res.t_star,
        "time_budget_s": scenario.time_budget,
        "exceeds_budget": exceeds,
        "m_max": res.m_max,
        "n_min": res.n_min,
        "n_max": res.n_max,
        "feasible": res.feasible,
    }
    summary_text = (
        f"crossover {kind} k={k:g} M={oracle_ops:g} vs {cm.label}: n_star={display(res.n_star)} calls, "
        f"t_star={display(res.t_star)} s"
        + (f" (exceeds budget of {display(scenario.time_budget)} s)" if exceeds else " (within budget)")
        + f"; m_max={display(res.m_max)}, feasible N range [{display(res.n_min)}, {display(res.n_max)}]"
        + ("" if res.feasible else " is empty")
        + "\n"
    )
    header = ["N", "T_classical_s", "T_quantum_s", "is_crossover"]
    body = [[r.n, r.t_classical, r.t_quantum, "1" if r.is_crossover else "0"] for r in rows]
    curve_csv = csv_text(header, body)
    text = summary_text + grid_text(
        "runtime curve",
        header[1:],
        [[display(r.n), display(r.t_classical), display(r.t_quantum), "*" if r.is_crossover else ""] for r in rows],
    )
    data = {
        "command": "crossover",
        "summary": summary,
        "rows": [
            {"N": r.n, "T_classical_s": r.t_classical, "T_quantum_s": r.t_quantum, "is_crossover": r.is_crossover}
            for r in rows
        ],
    }
    return Output(text=text, csv=curve_csv, data=data, summary=summary_text)


def cmd_classify(scenario: Scenario, presets: bool = False) -> Output:
    if presets and not scenario.use_presets:
        scenario = scenario_from_dict(merge(scenario.raw, {"use_presets": True}))
    profiles = scenario.all_profiles()
    if not profiles:
        raise UsageError("no application profiles: add \"profiles\" to the scenario or pass --presets")
    cm = scenario.classical[scenario.budget_machine]
    verdicts = [classify(p, scenario.quantum, cm, scenario.time_budget) for p in profiles]

    text_lines = []
    records = []
    csv_rows = []
    for p, v in zip(profiles, verdicts):
        text_lines.append(f"{v.profile}: {v.category.value} (speedup {_k_label(v.effective_speedup)})")
        for f in v.rationale:
            mark = "!" if f.fired else "-"
            text_lines.append(f"  {mark} [{f.code}] {f.message}")
        records.append(
            {
                "profile": v.profile,
                "category": v.category.value,
                "speedup": _k_label(p.speedup),
                "effective_speedup": _k_label(v.effective_speedup),
                "rationale": [{"code": f.code, "fired": f.fired, "message": f.message, "values": f.values} for f in v.rationale],
            }
        )
        fired = [f.message for f in v.rationale if f.fired]
        csv_rows.append([v.profile, v.category.value, _k_label(v.effective_speedup), " | ".join(fired)])
    data = {"command": "classify", "classical_machine": cm.label, "verdicts": records}
    return Output(
        text="\n".join(text_lines) + "\n",
        csv=csv_text(["profile", "category", "effective_speedup", "findings"], csv_rows),
        data=data,
    )


def sweep_point(scenario: Scenario, sweep: SweepSpec) -> float:
    """Evaluate ``sweep.output`` on an already re-derived scenario."""
    op = scenario.kind(sweep.kind)
    qm = scenario.quantum
    if sweep.output == "units":
        return float(qm.layouts[op.name].units)
    if sweep.output == "throughput":
        label = sweep.machine or qm.label
        if label == qm.label:
            return qm.rate(op)
        return _budget_machine(scenario, label).rate(op)
    cm = _budget_machine(scenario, sweep.machine)
    t_c, t_q = cm.op_time(op), qm.op_time(op)
    if sweep.output == "m_max":
        return 0.0 if math.isinf(t_q) else xo.op_budget(sweep.k, t_c, t_q, scenario.time_budget)
    if math.isinf(t_q):
        return math.inf
    n_star, t_star = xo.crossover_point(sweep.k, t_c, t_q, sweep.oracle_ops)
    return n_star if sweep.output == "n_star" else t_star


def cmd_sweep(scenario: Scenario, sweep: SweepSpec) -> Output:
    rows = []
    for value in sweep.values:
        try:
            raw = set_path(scenario.raw, sweep.parameter, value)
        except KeyError:
            raise UsageError(f"sweep parameter {sweep.parameter!r} does not exist in the scenario") from None
        except TypeError:
            raise UsageError(f"sweep parameter {sweep.parameter!r} is not numeric") from None
        rows.append((float(value), sweep_point(scenario_from_dict(raw), sweep)))
    header = [sweep.parameter, sweep.output]
    text = grid_text(
        f"sweep {sweep.name}: {sweep.output} ({sweep.kind}, k={sweep.k:g}) over {sweep.parameter}",
        header[1:],
        [[display(a), display(b)] for a, b in rows],
    )
    data = {
        "command": "sweep",
        "name": sweep.name,
        "parameter": sweep.parameter,
        "output": sweep.output,
        "kind": sweep.kind,
        "k": sweep.k,
        "rows": [{"value": a, sweep.output: b} for a, b in rows],
    }
    return Output(text=text, csv=csv_text(header, rows), data=data)


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--scenario", metavar="PATH", default=default, help="JSON scenario file")
    parser.add_argument(
        "--defaults",
        action="store_true",
        default=argparse.SUPPRESS if suppress else False,
        help="use the built-in scenario (an empty --scenario file is then accepted)",
    )
    parser.add_argument(
        "--format", choices=("text", "json", "csv"), default=argparse.SUPPRESS if suppress else "text"
    )
    parser.add_argument("--out", metavar="PATH", default=default, help="write output here instead of stdout")


def _float_list(text: str) -> List[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2 on its own; keep it routed through main
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qadvantage", description=__doc__.split("\n\n")[0])
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="verb", metavar="VERB", parser_class=_Parser)

    p = sub.add_parser("throughput", help="per-kind peak throughput and I/O bandwidth")
    _global_options(p, suppress=True)
    p.add_argument("--binary-override", action="store_true", help="use the printed 235 kop/s quantum binary rate")

    p = sub.add_parser("budget", help="maximum operations per oracle call")
    _global_options(p, suppress=True)
    p.add_argument("--machine", help="classical machine label (default: scenario budget_machine)")
    p.add_argument("--binary-override", action="store_true", help="use the printed 235 kop/s quantum binary rate")

    p = sub.add_parser("crossover", help="runtime curve CSV around the crossover point")
    _global_options(p, suppress=True)
    p.add_argument("--kind", default="fp16")
    p.add_argument("--k", type=float, default=2.0)
    p.add_argument("--oracle-ops", "-M", type=float, default=1.0)
    p.add_argument("--machine")
    p.add_argument("--grid", type=_float_list, help="explicit ascending N values, comma-separated")
    p.add_argument("--n-start", type=float)
    p.add_argument("--n-stop", type=float)
    p.add_argument("--points", type=int, default=10, help="grid size (default grid spans n_star/100 to n_star*100)")

    p = sub.add_parser("classify", help="practicality verdicts")
    _global_options(p, suppress=True)
    p.add_argument("--presets", action="store_true", help="include the built-in application presets")

    p = sub.add_parser("sweep", help="parameter sweep CSV")
    _global_options(p, suppress=True)
    p.add_argument("--name", help="sweep defined in the scenario's \"sweeps\" section")
    p.add_argument("--param", help="dotted scenario path, e.g. quantum.cycle_time")
    p.add_argument("--values", type=_float_list)
    p.add_argument("--start", type=float)
    p.add_argument("--stop", type=float)
    p.add_argument("--num", type=int)
    p.add_argument("--step", type=float)
    p.add_argument("--scale", choices=("lin", "log"))
    p.add_argument("--output", choices=SWEEP_OUTPUTS)
    p.add_argument("--kind")
    p.add_argument("--k", type=float)
    p.add_argument("--machine")
    p.add_argument("--oracle-ops", "-M", type=float)
    return parser


def _sweep_from_args(scenario: Scenario, args: argparse.Namespace) -> SweepSpec:
    base: Dict[str, Any] = {}
    if args.name:
        if args.name not in scenario.sweeps:
            raise UsageError(f"no sweep named {args.name!r} in the scenario")
        base = dict(scenario.raw["sweeps"][args.name])
    elif not args.param:
        raise UsageError("sweep needs --name or --param")
    override = {
        "parameter": args.param,
        "values": args.values,
        "start": args.start,
        "stop": args.stop,
        "num": args.num,
        "step": args.step,
        "scale": args.scale,
        "output": args.output,
        "kind": args.kind,
        "k": args.k,
        "machine": args.machine,
        "oracle_ops": args.oracle_ops,
    }
    if any(override[key] is not None for key in ("values", "start", "stop", "num", "step")):
        for key in ("values", "start", "stop", "num", "step", "scale"):
            base.pop(key, None)
    base.update({key: v for key, v in override.items() if v is not None})
    if "values" not in base and not ("start" in base and "stop" in base):
        raise UsageError("sweep needs --values or --start/--stop")
    try:
        return parse_sweep(args.name or "cli", base)
    except ScenarioValidationError as exc:
        raise UsageError(str(exc)) from exc


def run(argv: Optional[Sequence[str]] = None) -> tuple[Output, argparse.Namespace]:
    args = build_parser().parse_args(argv)
    return _dispatch(args), args


def _dispatch(args: argparse.Namespace) -> Output:
    if args.verb is None:
        raise UsageError("missing VERB (throughput, budget, crossover, classify, sweep)")
    if args.scenario is None and not args.defaults:
        raise UsageError("pass --scenario PATH or --defaults")
    scenario = load_scenario(args.scenario, allow_empty=args.defaults)

    if args.verb == "throughput":
        return cmd_throughput(with_binary_override(scenario) if args.binary_override else scenario)
    if args.verb == "budget":
        return cmd_budget(with_binary_override(scenario) if args.binary_override else scenario, args.machine)
    if args.verb == "crossover":
        grid = args.grid
        if grid is None and (args.n_start is not None or args.n_stop is not None):
            if args.n_start is None or args.n_stop is None:
                raise UsageError("--n-start and --n-stop go together")
            grid = xo.log_grid(args.n_start, args.n_stop, args.points)
        if args.kind not in {k.name for k in scenario.kinds}:
            raise UsageError(f"unknown kind {args.kind!r}")
        return cmd_crossover(scenario, args.kind, args.k, args.oracle_ops, grid, args.machine, args.points)
    if args.verb == "classify":
        return cmd_classify(scenario, args.presets)
    sweep = _sweep_from_args(scenario, args)
    if sweep.kind not in {k.name for k in scenario.kinds}:
        raise UsageError(f"unknown kind {sweep.kind!r}")
    return cmd_sweep(scenario, sweep)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        output, args = run(argv)
        rendered = output.render(args.format)
        if args.out:
            Path(args.out).write_text(rendered, encoding="utf-8")
        else:
            sys.stdout.write(rendered)
        if args.format == "csv" and output.summary:
            sys.stderr.write(output.summary)
        return EXIT_OK
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ScenarioFileMissing as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISSING
    except ScenarioParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ScenarioValidationError, ConfigurationError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (DomainError, InputError, UnsupportedError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
