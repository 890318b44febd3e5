import json
from pathlib import Path

import pytest

from pqckit import CapacityError
from pqckit.cli import main
from pqckit.harness import (
    CSV_HEADER,
    ExperimentConfig,
    MetricSample,
    config_from_dict,
    config_from_json,
    configuration_records,
    emit,
    read_samples,
    run_experiment,
    run_m_sweep,
    run_photonic_sweep,
    run_qubit_sweep,
)
from pqckit.circuit import parse_configuration_record


def small_cfg(**over):
    base = dict(
        experiment="expressibility",
        n_qubits=3,
        n_layers=1,
        entangler="cnot_chain",
        m_values=(0, 4),
        circuits_per_m=2,
        samples=150,
        seed=7,
    )
    base.update(over)
    return ExperimentConfig(**base)


# ---------------------------------------------------------------------------
# Config validation
# ---------------------------------------------------------------------------


def test_config_rejects_bad_m():
    with pytest.raises(ValueError):
        small_cfg(m_values=(99,))


def test_config_rejects_unknown_experiment():
    with pytest.raises(ValueError):
        small_cfg(experiment="banana")


def test_config_rejects_unknown_keys():
    with pytest.raises(ValueError):
        config_from_dict({"experiment": "expressibility", "qubits": 3})


def test_config_from_json(tmp_path):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps({"experiment": "expressibility", "n_qubits": 2,
                             "n_layers": 1, "m_values": [0]}))
    cfg = config_from_json(p)
    assert cfg.n_qubits == 2 and cfg.m_values == (0,)
    p.write_text("[1, 2]")
    with pytest.raises(ValueError):
        config_from_json(p)


def test_config_qubit_sweep_capacity():
    with pytest.raises(CapacityError):
        ExperimentConfig(experiment="qubit_sweep", n_values=(11,))


def test_config_vqe_needs_hamiltonian():
    with pytest.raises(ValueError):
        small_cfg(experiment="vqe")


def test_config_photonic_validation():
    with pytest.raises(ValueError):
        ExperimentConfig(experiment="photonic", d=16, kind="ps", k_values=(17,))
    cfg = ExperimentConfig(experiment="photonic", d=4, kind="ps", k_values=(2,), samples=50,
                           circuits_per_m=1)
    assert cfg.k_values == (2,)


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------


def test_m_sweep_row_shape():
    rows = run_m_sweep(small_cfg())
    assert len(rows) == 4  # 2 m-values x 2 circuits
    for r in rows:
        assert r.metric == "relative_expressibility"
        assert r.m in (0, 4)
        assert r.n_qubits == 3 and r.n_layers == 1


def test_m_sweep_idle_rows_are_zero():
    rows = run_m_sweep(small_cfg(entangler="none", m_values=(0,)))
    assert all(abs(r.value) < 1e-12 for r in rows)


def test_entanglement_sweep_none_exact_zero():
    rows = run_m_sweep(small_cfg(experiment="entanglement", entangler="none", m_values=(4,)))
    assert all(r.value == 0.0 for r in rows)


def test_worker_counts_agree():
    cfg = small_cfg()
    assert run_m_sweep(cfg, workers=1) == run_m_sweep(cfg, workers=2)


def test_qubit_sweep_rows():
    cfg = ExperimentConfig(
        experiment="qubit_sweep", n_values=(2,), l_values=(1,),
        entanglers=("none", "cnot_chain", "ps"), samples=100, seed=1,
    )
    rows = run_qubit_sweep(cfg)
    series = {(r.entangler, r.metric) for r in rows}
    assert ("ps", "relative_expressibility") in series
    assert ("cnot_chain", "entangling_capability") in series
    none_caps = [r for r in rows if r.entangler == "none" and r.metric == "entangling_capability"]
    assert none_caps and all(r.value == 0.0 for r in none_caps)
    ps_rows = [r for r in rows if r.entangler == "ps"]
    assert all(r.m == 0 and r.n_layers == 0 for r in ps_rows)


def test_photonic_sweep_rows():
    cfg = ExperimentConfig(
        experiment="photonic", d=4, kind="ps", k_values=(0, 4), circuits_per_m=2,
        samples=100, seed=3, metrics=("relative_expressibility",),
    )
    rows = run_photonic_sweep(cfg)
    assert len(rows) == 4
    zero_rows = [r for r in rows if r.m == 0]
    assert all(abs(r.value) < 1e-12 for r in zero_rows)  # no driven phases = idle


def test_photonic_vqe_metric():
    path = Path(__file__).parent / "_tiny2.ham"
    path.write_text("ZI 1.0\nIZ 1.0\nXX 0.25\n")
    try:
        cfg = ExperimentConfig(
            experiment="photonic", d=4, kind="ps_dft_ps", k_values=(4,),
            circuits_per_m=1, seed=5, metrics=("energy_error",),
            hamiltonian_path=str(path), restarts=2, max_evaluations=3000,
        )
        rows = run_photonic_sweep(cfg)
        assert len(rows) == 1
        assert rows[0].metric == "energy_error"
        assert -1e-9 <= rows[0].value < 0.1
    finally:
        path.unlink()


def test_photonic_vqe_dimension_mismatch():
    path = Path(__file__).parent / "_tiny3.ham"
    path.write_text("Z 1.0\n")
    try:
        cfg = ExperimentConfig(
            experiment="photonic", d=4, kind="ps_dft_ps", k_values=(4,),
            circuits_per_m=1, metrics=("energy_error",), hamiltonian_path=str(path),
        )
        with pytest.raises(ValueError):
            run_photonic_sweep(cfg)
    finally:
        path.unlink()


def test_vqe_sweep():
    path = Path(__file__).parent / "_tiny.ham"
    path.write_text("ZI 1.0\nIZ 1.0\nXX 0.25\n")
    try:
        cfg = ExperimentConfig(
            experiment="vqe", n_qubits=2, n_layers=1, entangler="cnot_chain",
            m_values=(8,), circuits_per_m=2, seed=5,
            hamiltonian_path=str(path), restarts=2, max_evaluations=1500,
        )
        rows = run_m_sweep(cfg)
        assert len(rows) == 2
        for r in rows:
            assert r.metric == "energy_error"
            assert -1e-9 <= r.value < 0.5
    finally:
        path.unlink()


def test_configuration_records_parse_back():
    cfg = small_cfg()
    text = configuration_records(cfg)
    blocks = [b for b in text.split("# m=") if b.strip()]
    assert len(blocks) == 4
    parsed, seed = parse_configuration_record(text.splitlines()[0:8])
    assert parsed.template.n_qubits == 3
    assert seed >= 0


# ---------------------------------------------------------------------------
# Emission
# ---------------------------------------------------------------------------


def sample_rows():
    return [
        MetricSample("expressibility", 3, 1, "cnot_chain", 4, 0,
                     "relative_expressibility", 5.80000001, 77),
        MetricSample("expressibility", 3, 1, "cnot_chain", 4, 1,
                     "relative_expressibility", 0.123456789, 78),
    ]


def test_emit_csv_round_trip(tmp_path):
    rows = sample_rows()
    out = tmp_path / "rows.csv"
    emit(rows, out)
    text = out.read_text()
    assert text.splitlines()[0] == CSV_HEADER
    assert read_samples(out) == rows
    # re-emission is byte-stable
    out2 = tmp_path / "rows2.csv"
    emit(read_samples(out), out2)
    assert out.read_bytes() == out2.read_bytes()


def test_emit_csv_empty(tmp_path):
    out = tmp_path / "empty.csv"
    emit([], out)
    assert out.read_text() == CSV_HEADER + "\n"


def test_emit_json_round_trip(tmp_path):
    rows = sample_rows()
    out = tmp_path / "rows.json"
    emit(rows, out, format="json")
    records = json.loads(out.read_text())
    assert len(records) == 2
    assert read_samples(out) == rows


def test_emit_nine_significant_digits(tmp_path):
    rows = [MetricSample("expressibility", 2, 1, "none", 0, 0, "relative_expressibility",
                         1.2345678949999, 0)]
    out = tmp_path / "digits.csv"
    emit(rows, out)
    assert ",1.23456789," in out.read_text()


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------


def write_config(tmp_path, data, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return p


def test_cli_expressibility_end_to_end(tmp_path):
    cfg = write_config(tmp_path, {
        "n_qubits": 2, "n_layers": 1, "entangler": "none",
        "m_values": [0], "circuits_per_m": 2, "samples": 100,
    })
    out = tmp_path / "out.csv"
    code = main(["expressibility", "--config", str(cfg), "--seed", "3", "--out", str(out)])
    assert code == 0
    rows = read_samples(out)
    assert len(rows) == 2 and all(abs(r.value) < 1e-12 for r in rows)
    sidecar = Path(str(out) + ".configs.txt")
    assert sidecar.exists() and "entangler=none" in sidecar.read_text()


def test_cli_bad_config_exit_2(tmp_path):
    cfg = write_config(tmp_path, {"m_values": [999], "n_qubits": 2, "n_layers": 1})
    assert main(["expressibility", "--config", str(cfg), "--out", "/tmp/x.csv"]) == 2


def test_cli_mismatched_experiment_exit_2(tmp_path):
    cfg = write_config(tmp_path, {"experiment": "vqe", "n_qubits": 2, "n_layers": 1,
                                  "m_values": [0]})
    assert main(["expressibility", "--config", str(cfg), "--out", "/tmp/x.csv"]) == 2


def test_cli_capacity_exit_3(tmp_path):
    cfg = write_config(tmp_path, {"n_values": [12], "samples": 10})
    assert main(["qubit-sweep", "--config", str(cfg), "--out", "/tmp/x.csv"]) == 3


def test_cli_missing_config_exit_4(tmp_path):
    assert main(["expressibility", "--config", str(tmp_path / "nope.json"),
                 "--out", "/tmp/x.csv"]) == 4


def test_cli_unwritable_output_exit_4(tmp_path):
    cfg = write_config(tmp_path, {
        "n_qubits": 2, "n_layers": 1, "entangler": "none",
        "m_values": [0], "circuits_per_m": 1, "samples": 50,
    })
    code = main(["expressibility", "--config", str(cfg),
                 "--out", str(tmp_path / "no_dir" / "out.csv")])
    assert code == 4


def test_cli_invalid_json_exit_2(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert main(["expressibility", "--config", str(p), "--out", "/tmp/x.csv"]) == 2


def test_run_experiment_dispatch():
    rows = run_experiment(small_cfg())
    assert rows and rows[0].experiment == "expressibility"
