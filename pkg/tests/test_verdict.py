import math
from dataclasses import replace

import pytest
from hypothesis import given, strategies as st

from qadvantage.crossover import EXPONENTIAL
from qadvantage.errors import ConfigurationError
from qadvantage.machines import A100_CLASS_ASIC, build_classical_machine
from qadvantage.qarith import QuantumMachineSpec, build_quantum_machine
from qadvantage.verdict import (
    ApplicationProfile,
    Category,
    blackbox_cap,
    classify,
    io_bound_check,
    preset_profiles,
)

QM = build_quantum_machine(QuantumMachineSpec())
CM = build_classical_machine("asic", A100_CLASS_ASIC)


def test_io_database_scan_fires(quantum, asic):
    p = ApplicationProfile("db", 2, oracle={"binary": 10}, input_bits=1e15)
    f = io_bound_check(p, quantum, asic)
    assert f.fired
    assert f.values["quantum_data_time_s"] == 1e6
    assert f.values["classical_data_time_s"] == 100


def test_io_no_data_never_fires(quantum, asic):
    assert not io_bound_check(ApplicationProfile("x", 2), quantum, asic).fired


def test_io_small_data_does_not_fire(quantum, asic):
    f = io_bound_check(ApplicationProfile("x", 2, input_bits=1e9), quantum, asic)
    assert not f.fired
    assert f.values["quantum_data_time_s"] == 1.0


def test_io_data_bound_classical_fires_below_budget(quantum, asic):
    p = ApplicationProfile("scan", 2, input_bits=1e9, data_bound=True)
    assert io_bound_check(p, quantum, asic).fired


def test_blackbox_cap():
    capped, f = blackbox_cap(ApplicationProfile("x", 6))
    assert capped.speedup == 4 and "structure" in f.message
    same, f = blackbox_cap(ApplicationProfile("x", 6, structured=True))
    assert same.speedup == 6 and f is None
    same, f = blackbox_cap(ApplicationProfile("x", 3))
    assert same.speedup == 3 and f is None


def test_classify_examples(quantum, asic):
    chem = ApplicationProfile("chem", EXPONENTIAL, input_bits=1e6, structured=True)
    assert classify(chem, quantum, asic).category is Category.PROMISING
    db = ApplicationProfile("db", 2, oracle={"binary": 10}, input_bits=1e15, data_bound=True)
    assert classify(db, quantum, asic).category is Category.IO_BOUND
    quad = ApplicationProfile("q", 2, oracle={"fp16": 100})
    v = classify(quad, quantum, asic)
    assert v.category is Category.IMPRACTICAL
    budget = next(f for f in v.rationale if f.code == "budget.fp16")
    assert budget.values["m_max"] == pytest.approx(0.199, rel=1e-2)
    assert budget.values["oracle_ops"] == 100
    assert any(f.code == "quadratic" and "insufficient" in f.message for f in v.rationale)


def test_classify_polynomial_within_budget(quantum, asic):
    v = classify(ApplicationProfile("quartic", 4, oracle={"fp16": 1000}), quantum, asic)
    assert v.category is Category.PROMISING


def test_mixed_oracle_fails_if_any_kind_exceeds(quantum, asic):
    ok = ApplicationProfile("a", 3, oracle={"binary": 1000})
    assert classify(ok, quantum, asic).category is Category.PROMISING
    mixed = replace(ok, oracle={"binary": 1000, "int32": 5000})
    assert classify(mixed, quantum, asic).category is Category.IMPRACTICAL


def test_combined_oracle_cost_can_fail_even_when_kinds_fit(quantum, asic):
    # Each kind sits just under its own cubic budget; together the oracle is too slow.
    p = ApplicationProfile("a", 3, oracle={"fp16": 40_000, "int32": 1_500})
    v = classify(p, quantum, asic)
    per_kind = [f for f in v.rationale if f.code.startswith("budget.") and f.code != "budget.combined"]
    assert not any(f.fired for f in per_kind)
    combined = next(f for f in v.rationale if f.code == "budget.combined")
    assert combined.fired
    assert v.category is Category.IMPRACTICAL


def test_missing_oracle_needs_model(quantum, asic):
    v = classify(ApplicationProfile("x", 3), quantum, asic)
    assert v.category is Category.NEEDS_DETAILED_MODEL


def test_exponential_with_oracle_is_inconsistent(quantum, asic):
    with pytest.raises(ConfigurationError):
        classify(ApplicationProfile("x", EXPONENTIAL, oracle={"fp16": 3}), quantum, asic)


def test_unknown_oracle_kind(quantum, asic):
    with pytest.raises(ConfigurationError, match="fp64"):
        classify(ApplicationProfile("x", 2, oracle={"fp64": 3}), quantum, asic)


def test_capped_profile_classified_at_quartic(quantum, asic):
    v = classify(ApplicationProfile("x", 8, oracle={"fp16": 10}), quantum, asic)
    assert v.effective_speedup == 4
    assert any(f.code == "blackbox_cap" for f in v.rationale)


def test_presets_contents():
    by_name = {p.name: p for p in preset_profiles()}
    assert by_name["Shor cryptanalysis"].speedup is EXPONENTIAL
    assert by_name["Monte Carlo via quantum walks"].speedup == 2
    assert by_name["Quantum chemistry and materials simulation"].speedup is EXPONENTIAL


def test_presets_split(quantum, asic):
    got = {p.name: classify(p, quantum, asic).category for p in preset_profiles()}
    assert got["Shor cryptanalysis"] is Category.PROMISING
    assert got["Quantum chemistry and materials simulation"] is Category.PROMISING
    for name in ("Grover search", "Monte Carlo via quantum walks", "Weather and climate simulation"):
        assert got[name] is Category.IMPRACTICAL
    assert got["Database search (Grover)"] is Category.IO_BOUND
    assert got["Big data analytics"] is Category.IO_BOUND


def test_every_verdict_has_numbers(quantum, asic):
    for p in preset_profiles():
        v = classify(p, quantum, asic)
        assert any(f.fired and f.values for f in v.rationale), p.name


oracles = st.dictionaries(st.sampled_from(["fp16", "int32", "binary"]), st.floats(1, 1e9), min_size=1)


@given(st.floats(1.1, 6), oracles, st.floats(1, 100), st.floats(0, 1e17), st.booleans(), st.booleans())
def test_monotone_in_oracle_size(k, oracle, grow, bits, structured, data_bound):
    qm, cm = QM, CM
    p = ApplicationProfile("p", k, oracle=oracle, input_bits=bits, structured=structured, data_bound=data_bound)
    if classify(p, qm, cm).category is Category.IMPRACTICAL:
        bigger = replace(p, oracle={kind: n * grow for kind, n in oracle.items()})
        assert classify(bigger, qm, cm).category is not Category.PROMISING


@given(st.floats(0, 1e17), st.floats(0, 1), st.booleans(), st.sampled_from([2, 3, EXPONENTIAL]))
def test_shrinking_data_never_creates_io_bound(bits, shrink, data_bound, k):
    qm, cm = QM, CM
    oracle = {} if k is EXPONENTIAL else {"binary": 10}
    p = ApplicationProfile("p", k, oracle=oracle, input_bits=bits, data_bound=data_bound)
    if classify(p, qm, cm).category is not Category.IO_BOUND:
        smaller = replace(p, input_bits=bits * shrink)
        assert classify(smaller, qm, cm).category is not Category.IO_BOUND


@given(st.floats(1.01, 50), st.booleans())
def test_cap_never_increases_k(k, structured):
    capped, _ = blackbox_cap(ApplicationProfile("p", k, structured=structured))
    assert capped.speedup <= k


def test_classify_deterministic(quantum, asic):
    a = [classify(p, quantum, asic) for p in preset_profiles()]
    b = [classify(p, quantum, asic) for p in preset_profiles()]
    assert a == b
