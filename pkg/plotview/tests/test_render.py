import hashlib

import pytest

from plotview import EmptyInputError, PlotJob, SchemaError, render
from plotview.cli import main

HEADER = "experiment,N,L,entangler,m,circuit_index,metric,value,seed"


def write_csv(path, rows):
    path.write_text("\n".join([HEADER] + rows) + "\n")
    return path


def table1_csv(tmp_path):
    rows = []
    for ent in ("cnot_chain", "diamond"):
        for m in (5, 15, 25):
            for ci in range(6):
                value = 5.0 + 0.1 * m + 0.05 * ci + (0.5 if ent == "diamond" else 0.0)
                rows.append(
                    f"expressibility,4,2,{ent},{m},{ci},relative_expressibility,{value},7"
                )
    return write_csv(tmp_path / "table1.csv", rows)


def sweep_csv(tmp_path):
    rows = []
    for ent in ("none", "cnot_chain", "ps"):
        for n in (2, 3, 4, 5):
            cap = {"none": 0.0, "cnot_chain": 0.5 + 0.05 * n, "ps": 0.8}[ent]
            rows.append(f"qubit_sweep,{n},1,{ent},0,0,entangling_capability,{cap},7")
    return write_csv(tmp_path / "sweep.csv", rows)


def sha(path):
    return hashlib.sha256(path.read_bytes()).hexdigest()


def test_heatmap_renders(tmp_path):
    csv = table1_csv(tmp_path)
    out = tmp_path / "heat.png"
    render(PlotJob(str(csv), "heatmap2d", "relative_expressibility", str(out)))
    assert out.exists() and out.stat().st_size > 1000


def test_line_sweep_renders(tmp_path):
    csv = sweep_csv(tmp_path)
    out = tmp_path / "line.png"
    render(PlotJob(str(csv), "line_sweep", "entangling_capability", str(out)))
    assert out.exists() and out.stat().st_size > 1000


def test_identical_inputs_identical_checksums(tmp_path):
    csv = table1_csv(tmp_path)
    a, b = tmp_path / "a.png", tmp_path / "b.png"
    render(PlotJob(str(csv), "heatmap2d", "relative_expressibility", str(a)))
    render(PlotJob(str(csv), "heatmap2d", "relative_expressibility", str(b)))
    assert sha(a) == sha(b)


def test_header_only_is_empty_input(tmp_path):
    csv = write_csv(tmp_path / "empty.csv", [])
    with pytest.raises(EmptyInputError):
        render(PlotJob(str(csv), "heatmap2d", "relative_expressibility", str(tmp_path / "x.png")))


def test_missing_metric_is_empty_input(tmp_path):
    csv = table1_csv(tmp_path)
    with pytest.raises(EmptyInputError):
        render(PlotJob(str(csv), "heatmap2d", "energy_error", str(tmp_path / "x.png")))


def test_single_row_heatmap(tmp_path):
    csv = write_csv(
        tmp_path / "one.csv",
        ["expressibility,4,2,diamond,25,0,relative_expressibility,9.4,7"],
    )
    out = tmp_path / "one.png"
    render(PlotJob(str(csv), "heatmap2d", "relative_expressibility", str(out)))
    assert out.exists()


def test_degenerate_values_heatmap(tmp_path):
    """An idle sweep (all zeros) still renders, with mass in one value row."""
    rows = [
        f"expressibility,4,1,none,{m},{ci},relative_expressibility,0,7"
        for m in (0, 2) for ci in range(3)
    ]
    csv = write_csv(tmp_path / "idle.csv", rows)
    out = tmp_path / "idle.png"
    render(PlotJob(str(csv), "heatmap2d", "relative_expressibility", str(out)))
    assert out.exists()


def test_bad_schema_rejected(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b,c\n1,2,3\n")
    with pytest.raises(SchemaError):
        render(PlotJob(str(bad), "heatmap2d", "relative_expressibility", str(tmp_path / "x.png")))


def test_bad_kind_rejected(tmp_path):
    with pytest.raises(ValueError):
        PlotJob("x.csv", "scatter3d", "relative_expressibility", "x.png")


def test_source_csv_untouched(tmp_path):
    csv = table1_csv(tmp_path)
    before = csv.read_bytes()
    render(PlotJob(str(csv), "heatmap2d", "relative_expressibility", str(tmp_path / "h.png")))
    assert csv.read_bytes() == before


def test_no_partial_file_on_failure(tmp_path):
    csv = table1_csv(tmp_path)
    out = tmp_path / "missing_dir" / "x.png"
    with pytest.raises(OSError):
        render(PlotJob(str(csv), "heatmap2d", "relative_expressibility", str(out)))
    assert not out.exists()


def test_cli_end_to_end(tmp_path):
    csv = table1_csv(tmp_path)
    out = tmp_path / "cli.png"
    code = main([str(csv), "--kind", "heatmap2d",
                 "--metric", "relative_expressibility", "--out", str(out)])
    assert code == 0 and out.exists()


def test_cli_empty_input_exit_2(tmp_path):
    csv = write_csv(tmp_path / "empty.csv", [])
    code = main([str(csv), "--kind", "line_sweep",
                 "--metric", "entangling_capability", "--out", str(tmp_path / "x.png")])
    assert code == 2
