"""Experiment orchestration: m-sweeps, qubit sweeps, photonic sweeps, seeded
parallel sampling, and CSV/JSON emission.

Every task (one circuit at one sweep point) derives its RNG streams from
(seed, stream tag, sweep key), so results do not depend on scheduling;
tasks are merged in task order, making output files byte-identical for any
worker count. Numbers are serialized with 9 significant digits.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Sequence

import numpy as np

from .circuit import (
    CircuitTemplate,
    RotationConfiguration,
    configuration_record,
    random_configuration,
)
from .errors import CapacityError
from .gates import EntanglerKind
from .hamiltonian import load_hamiltonian
from .metrics import entangling_capability, expressibility
from .photonics import full_configuration, random_photonic_configuration
from .vqe import OptimizerSettings, vqe_minimize

EXPERIMENTS = ("expressibility", "entanglement", "vqe", "qubit_sweep", "photonic")

METRIC_EXPR = "relative_expressibility"
METRIC_CAP = "entangling_capability"
METRIC_VQE = "energy_error"

MAX_SWEEP_QUBITS = 10

_CFG_STREAM = 0x43464749
_JOB_STREAM = 0x4A4F4221
PS_SERIES = "ps"


@dataclass(frozen=True)
class MetricSample:
    """One (sweep point, circuit, metric) record."""

    experiment: str
    n_qubits: int
    n_layers: int
    entangler: str
    m: int
    circuit_index: int
    metric: str
    value: float
    seed: int


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    n_qubits: int = 0
    n_layers: int = 1
    entangler: str = "none"
    m_values: tuple[int, ...] = ()
    circuits_per_m: int = 100
    samples: int | None = None
    seed: int = 0
    hamiltonian_path: str | None = None
    output_path: str | None = None
    # vqe
    restarts: int = 5
    max_evaluations: int = 20000
    # qubit sweep
    n_values: tuple[int, ...] = ()
    l_values: tuple[int, ...] = (1, 2, 3)
    entanglers: tuple[str, ...] = ()
    # photonic
    kind: str = "ps"
    d: int = 0
    k_values: tuple[int, ...] = ()
    metrics: tuple[str, ...] = ()

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}")
        for name in ("m_values", "n_values", "l_values", "entanglers", "k_values", "metrics"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if self.circuits_per_m < 1:
            raise ValueError("circuits_per_m must be >= 1")
        self._validate()

    def _validate(self) -> None:
        exp = self.experiment
        if exp in ("expressibility", "entanglement", "vqe"):
            tpl = CircuitTemplate(self.n_qubits, self.n_layers, EntanglerKind(self.entangler))
            if not self.m_values:
                raise ValueError("m_values must not be empty")
            for m in self.m_values:
                if not 0 <= m <= tpl.max_rotations:
                    raise ValueError(f"m={m} outside [0, {tpl.max_rotations}]")
            if exp == "vqe" and not self.hamiltonian_path:
                raise ValueError("vqe needs hamiltonian_path")
        elif exp == "qubit_sweep":
            if not self.n_values:
                raise ValueError("n_values must not be empty")
            for n in self.n_values:
                if n > MAX_SWEEP_QUBITS:
                    raise CapacityError(f"qubit sweep capped at {MAX_SWEEP_QUBITS} qubits")
                if n < 2:
                    raise ValueError("qubit sweep needs n >= 2")
            for lv in self.l_values:
                if lv < 1:
                    raise ValueError("layer counts must be >= 1")
        else:  # photonic
            if self.d < 2:
                raise ValueError("photonic experiment needs d >= 2")
            if self.kind not in ("ps", "ps_dft_ps"):
                raise ValueError(f"unknown photonic kind {self.kind!r}")
            if not self.k_values:
                raise ValueError("k_values must not be empty")
            for k in self.k_values:
                if not 0 <= k <= self.d:
                    raise ValueError(f"k={k} outside [0, {self.d}]")
            for metric in self.metrics:
                if metric not in (METRIC_EXPR, METRIC_CAP, METRIC_VQE):
                    raise ValueError(f"unknown photonic metric {metric!r}")
            if METRIC_VQE in self.metrics and not self.hamiltonian_path:
                raise ValueError("photonic energy_error metric needs hamiltonian_path")


def config_from_dict(data: dict) -> ExperimentConfig:
    known = {f.name for f in fields(ExperimentConfig)}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return ExperimentConfig(**data)


def config_from_json(path: str | Path) -> ExperimentConfig:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("config JSON must be an object")
    return config_from_dict(data)


def derive_seed(*parts: int) -> int:
    """Deterministic 64-bit seed from a tuple of non-negative integers."""
    ss = np.random.SeedSequence(list(parts))
    return int(ss.generate_state(1, np.uint64)[0])


def _entanglers_for(n: int) -> list[str]:
    kinds = [EntanglerKind.NONE, EntanglerKind.CNOT_CHAIN, EntanglerKind.ISWAP_CHAIN]
    if n >= 4 and n % 2 == 0:
        kinds.append(EntanglerKind.DIAMOND)
    kinds += [EntanglerKind.MC_NOT, EntanglerKind.MC_INOT]
    if n >= 3:
        kinds.append(EntanglerKind.MC_ISWAP)
    return [k.value for k in kinds]


def _m_sweep_task(args) -> list[MetricSample]:
    cfg, ham, m, ci = args
    tpl = CircuitTemplate(cfg.n_qubits, cfg.n_layers, EntanglerKind(cfg.entangler))
    config_rng = np.random.default_rng(
        np.random.SeedSequence([cfg.seed, _CFG_STREAM, m, ci])
    )
    circuit = random_configuration(tpl, m, config_rng)
    job_seed = derive_seed(cfg.seed, _JOB_STREAM, m, ci)
    rows = []

    def row(metric: str, value: float) -> MetricSample:
        return MetricSample(
            cfg.experiment, cfg.n_qubits, cfg.n_layers, cfg.entangler,
            m, ci, metric, value, job_seed,
        )

    if cfg.experiment == "expressibility":
        res = expressibility(circuit, cfg.samples, seed=job_seed)
        rows.append(row(METRIC_EXPR, res.relative))
    elif cfg.experiment == "entanglement":
        res = entangling_capability(circuit, cfg.samples, seed=job_seed)
        rows.append(row(METRIC_CAP, res.capability))
    else:  # vqe
        settings = OptimizerSettings(
            restarts=cfg.restarts, max_evaluations=cfg.max_evaluations
        )
        outcome = vqe_minimize(circuit, ham, settings, seed=job_seed)
        rows.append(row(METRIC_VQE, outcome.energy_error))
    return rows


def _qubit_sweep_task(args) -> list[MetricSample]:
    cfg, _, n, layers, entangler = args
    job_seed = derive_seed(cfg.seed, _JOB_STREAM, n, layers, _stable_tag(entangler))
    if entangler == PS_SERIES:
        ansatz = full_configuration("ps", 1 << n)
        n_layers, m = 0, 0
    else:
        tpl = CircuitTemplate(n, layers, EntanglerKind(entangler))
        m = tpl.max_rotations
        ansatz = RotationConfiguration(tpl, tuple(range(m)))
        n_layers = layers
    expr = expressibility(ansatz, cfg.samples, seed=job_seed)
    cap = entangling_capability(ansatz, cfg.samples, seed=job_seed)
    return [
        MetricSample("qubit_sweep", n, n_layers, entangler, m, 0, METRIC_EXPR,
                     expr.relative, job_seed),
        MetricSample("qubit_sweep", n, n_layers, entangler, m, 0, METRIC_CAP,
                     cap.capability, job_seed),
    ]


def _photonic_task(args) -> list[MetricSample]:
    cfg, ham, k, ci = args
    config_rng = np.random.default_rng(
        np.random.SeedSequence([cfg.seed, _CFG_STREAM, k, ci])
    )
    ansatz = random_photonic_configuration(cfg.kind, cfg.d, k, config_rng)
    job_seed = derive_seed(cfg.seed, _JOB_STREAM, k, ci)
    n = int(np.log2(cfg.d)) if cfg.d & (cfg.d - 1) == 0 else 0
    metrics = cfg.metrics or (METRIC_EXPR,)
    rows = []
    for metric in metrics:
        if metric == METRIC_EXPR:
            value = expressibility(ansatz, cfg.samples, seed=job_seed).relative
        elif metric == METRIC_CAP:
            value = entangling_capability(ansatz, cfg.samples, seed=job_seed).capability
        else:  # energy_error: the qudit state doubles as a qubit register
            settings = OptimizerSettings(
                restarts=cfg.restarts, max_evaluations=cfg.max_evaluations
            )
            value = vqe_minimize(ansatz, ham, settings, seed=job_seed).energy_error
        rows.append(
            MetricSample("photonic", n, 0, cfg.kind, k, ci, metric, value, job_seed)
        )
    return rows


def _stable_tag(text: str) -> int:
    """Order-stable small integer for a label (never Python's salted hash)."""
    tag = 0
    for ch in text.encode("utf-8"):
        tag = (tag * 257 + ch) % (1 << 61)
    return tag


def _run_tasks(task_fn, payloads: list, workers: int) -> list[MetricSample]:
    if workers <= 1 or len(payloads) <= 1:
        results = [task_fn(p) for p in payloads]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(task_fn, payloads, chunksize=1))
    return [row for rows in results for row in rows]


def run_m_sweep(cfg: ExperimentConfig, workers: int = 1) -> list[MetricSample]:
    """Sweep circuit count per rotation budget for one (N, L, entangler)."""
    if cfg.experiment not in ("expressibility", "entanglement", "vqe"):
        raise ValueError(f"run_m_sweep cannot execute {cfg.experiment!r}")
    ham = load_hamiltonian(cfg.hamiltonian_path) if cfg.experiment == "vqe" else None
    if ham is not None and ham.n_qubits != cfg.n_qubits:
        raise ValueError(
            f"Hamiltonian has {ham.n_qubits} qubits, config says {cfg.n_qubits}"
        )
    payloads = [
        (cfg, ham, m, ci) for m in cfg.m_values for ci in range(cfg.circuits_per_m)
    ]
    return _run_tasks(_m_sweep_task, payloads, workers)


def run_qubit_sweep(cfg: ExperimentConfig, workers: int = 1) -> list[MetricSample]:
    """Metrics at the full rotation budget m = M versus qubit count.

    Emits one expressibility and one capability row per (N, L, entangler)
    plus a pulse-shaper series at d = 2^N with zero qubit rotations.
    """
    if cfg.experiment != "qubit_sweep":
        raise ValueError("config is not a qubit_sweep experiment")
    payloads = []
    for n in cfg.n_values:
        series = list(cfg.entanglers) if cfg.entanglers else _entanglers_for(n) + [PS_SERIES]
        for entangler in series:
            if entangler == PS_SERIES:
                payloads.append((cfg, None, n, 0, entangler))
                continue
            for layers in cfg.l_values:
                payloads.append((cfg, None, n, layers, entangler))
    return _run_tasks(_qubit_sweep_task, payloads, workers)


def run_photonic_sweep(cfg: ExperimentConfig, workers: int = 1) -> list[MetricSample]:
    """Metrics versus number of driven phases for a qudit pipeline."""
    if cfg.experiment != "photonic":
        raise ValueError("config is not a photonic experiment")
    ham = None
    if METRIC_VQE in cfg.metrics:
        ham = load_hamiltonian(cfg.hamiltonian_path)
        if ham.dim != cfg.d:
            raise ValueError(
                f"Hamiltonian acts on {ham.dim} states, qudit has {cfg.d} levels"
            )
    payloads = [
        (cfg, ham, k, ci) for k in cfg.k_values for ci in range(cfg.circuits_per_m)
    ]
    return _run_tasks(_photonic_task, payloads, workers)


def run_experiment(cfg: ExperimentConfig, workers: int = 1) -> list[MetricSample]:
    if cfg.experiment == "qubit_sweep":
        return run_qubit_sweep(cfg, workers)
    if cfg.experiment == "photonic":
        return run_photonic_sweep(cfg, workers)
    return run_m_sweep(cfg, workers)


def configuration_records(cfg: ExperimentConfig) -> str:
    """Reproducibility sidecar: the key=value record of every circuit an
    m-sweep draws, regenerated from the same derived streams."""
    if cfg.experiment not in ("expressibility", "entanglement", "vqe"):
        raise ValueError("configuration records exist for m-sweep experiments only")
    tpl = CircuitTemplate(cfg.n_qubits, cfg.n_layers, EntanglerKind(cfg.entangler))
    parts = []
    for m in cfg.m_values:
        for ci in range(cfg.circuits_per_m):
            rng = np.random.default_rng(
                np.random.SeedSequence([cfg.seed, _CFG_STREAM, m, ci])
            )
            circuit = random_configuration(tpl, m, rng)
            job_seed = derive_seed(cfg.seed, _JOB_STREAM, m, ci)
            parts.append(f"# m={m} circuit={ci}\n" + configuration_record(circuit, job_seed))
    return "\n".join(parts)


CSV_HEADER = "experiment,N,L,entangler,m,circuit_index,metric,value,seed"


def _fmt(value: float) -> str:
    return format(value, ".9g")


def emit(samples: Sequence[MetricSample], path: str | Path, format: str = "csv") -> None:
    """Write samples as CSV (default) or a JSON array of records."""
    path = Path(path)
    if format == "csv":
        lines = [CSV_HEADER]
        for s in samples:
            lines.append(
                f"{s.experiment},{s.n_qubits},{s.n_layers},{s.entangler},"
                f"{s.m},{s.circuit_index},{s.metric},{_fmt(s.value)},{s.seed}"
            )
        path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    elif format == "json":
        records = [
            {
                "experiment": s.experiment,
                "N": s.n_qubits,
                "L": s.n_layers,
                "entangler": s.entangler,
                "m": s.m,
                "circuit_index": s.circuit_index,
                "metric": s.metric,
                "value": float(_fmt(s.value)),
                "seed": s.seed,
            }
            for s in samples
        ]
        path.write_text(json.dumps(records, indent=1) + "\n", encoding="utf-8", newline="\n")
    else:
        raise ValueError(f"unknown format {format!r}")


def read_samples(path: str | Path) -> list[MetricSample]:
    """Parse a CSV or JSON file produced by :func:`emit`."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".json" or text.lstrip().startswith("["):
        records = json.loads(text)
        return [
            MetricSample(
                r["experiment"], int(r["N"]), int(r["L"]), r["entangler"],
                int(r["m"]), int(r["circuit_index"]), r["metric"],
                float(r["value"]), int(r["seed"]),
            )
            for r in records
        ]
    lines = text.splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"{path}: missing header {CSV_HEADER!r}")
    out = []
    for line in lines[1:]:
        if not line:
            continue
        exp, n, l, ent, m, ci, metric, value, seed = line.split(",")
        out.append(
            MetricSample(exp, int(n), int(l), ent, int(m), int(ci), metric,
                         float(value), int(seed))
        )
    return out
