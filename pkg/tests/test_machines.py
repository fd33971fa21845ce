import math
from dataclasses import replace

import pytest
from hypothesis import given, strategies as st

from qadvantage.errors import ConfigurationError
from qadvantage.machines import (
    A100_CLASS_ASIC,
    A100_DATASHEET,
    BINARY,
    CANONICAL_KINDS,
    FP16,
    INT32,
    SEQUENTIAL_2GHZ,
    AsicChipSpec,
    DatasheetChipSpec,
    DepthLimitedSpec,
    OperationKind,
    asic_throughput,
    asic_unit_count,
    build_classical_machine,
    datasheet_throughput,
    depth_limited_slowdown,
    depth_limited_throughput,
)


@pytest.mark.parametrize(
    "kind, expected",
    [(FP16, 195e12), (INT32, 9.75e12), (BINARY, 4_992e12)],
)
def test_datasheet_throughput_halves_mixed_rates(kind, expected):
    assert datasheet_throughput(A100_DATASHEET, kind) == expected


def test_datasheet_unknown_kind_names_the_kind():
    odd = OperationKind("bf16", gate_equivalents=6000, quantum_mult_width=8)
    with pytest.raises(ConfigurationError, match="bf16"):
        datasheet_throughput(A100_DATASHEET, odd)


@pytest.mark.parametrize("kind, units", [(FP16, 387_142), (INT32, 150_555), (BINARY, 54_200_000)])
def test_asic_unit_counts(kind, units):
    assert asic_unit_count(A100_CLASS_ASIC, kind) == units


@pytest.mark.parametrize("kind, rate", [(FP16, 5.53e14), (INT32, 2.15e14), (BINARY, 7.74e16)])
def test_asic_throughput(kind, rate):
    assert asic_throughput(A100_CLASS_ASIC, kind) == pytest.approx(rate, rel=1e-3)


def test_depth_limited_throughput():
    assert depth_limited_throughput(SEQUENTIAL_2GHZ) == 2e9


def test_depth_limited_full_width_matches_asic():
    wide = DepthLimitedSpec(ops_per_cycle=387_142, clock_frequency=1 / 0.7e-9)
    assert depth_limited_throughput(wide) == pytest.approx(asic_throughput(A100_CLASS_ASIC, FP16), rel=1e-15)


def test_depth_limited_slowdown_vs_gpu(gpu):
    assert depth_limited_slowdown(gpu, SEQUENTIAL_2GHZ, FP16) == 97_500


def test_build_machines(gpu, asic, sequential):
    assert gpu.throughput == {"fp16": 195e12, "int32": 9.75e12, "binary": 4_992e12}
    assert gpu.io_bandwidth == 10_000e9
    assert [round(asic.rate(k) / 1e15, 2) for k in CANONICAL_KINDS] == [0.55, 0.22, 77.43]
    assert set(sequential.throughput.values()) == {2e9}
    assert gpu.op_time(FP16) == 1 / 195e12


def test_build_rejects_mismatched_spec():
    with pytest.raises(ConfigurationError, match="AsicChipSpec"):
        build_classical_machine("asic", A100_DATASHEET)
    with pytest.raises(ConfigurationError, match="unknown classical model"):
        build_classical_machine("fpga", A100_CLASS_ASIC)


def test_machine_rate_unknown_kind(gpu):
    with pytest.raises(ConfigurationError, match="tf32"):
        gpu.rate("tf32")


@pytest.mark.parametrize(
    "factory",
    [
        lambda: AsicChipSpec(cycle_time=0),
        lambda: AsicChipSpec(transistor_budget=-1),
        lambda: DepthLimitedSpec(clock_frequency=0),
        lambda: DatasheetChipSpec(raw_rates={"fp16": -1.0}, io_bandwidth=1.0),
        lambda: OperationKind("x", gate_equivalents=0, quantum_mult_width=4),
        lambda: OperationKind("x", gate_equivalents=10, quantum_mult_width=0),
    ],
)
def test_spec_invariants(factory):
    with pytest.raises(ConfigurationError):
        factory()


kinds = st.builds(
    OperationKind,
    name=st.just("k"),
    gate_equivalents=st.floats(1, 1e6),
    quantum_mult_width=st.integers(1, 64),
)
asics = st.builds(
    AsicChipSpec,
    transistor_budget=st.floats(1e6, 1e12),
    cycle_time=st.floats(1e-12, 1e-6),
    transistors_per_gate=st.floats(1, 20),
    control_overhead_factor=st.floats(1, 4),
)


@given(asics, kinds, st.floats(0.01, 100))
def test_cycle_time_scaling(spec, kind, s):
    scaled = replace(spec, cycle_time=spec.cycle_time * s)
    base = asic_throughput(spec, kind)
    assert asic_throughput(scaled, kind) == pytest.approx(base / s, rel=1e-12)


@given(asics, kinds)
def test_unit_count_fits_budget(spec, kind):
    units = asic_unit_count(spec, kind)
    used = units * kind.gate_equivalents * spec.transistors_per_gate * spec.control_overhead_factor
    assert units >= 0
    assert used <= spec.transistor_budget * (1 + 1e-12)


@given(st.floats(1e9, 1e17), st.booleans())
def test_datasheet_halving_property(raw, halve):
    kind = OperationKind("k", 10, 1, datasheet_mix_halving=halve)
    spec = DatasheetChipSpec(raw_rates={"k": raw}, io_bandwidth=1.0)
    got = datasheet_throughput(spec, kind)
    assert got == (raw / 2 if halve else raw)
    assert got > 0 and math.isfinite(got)
