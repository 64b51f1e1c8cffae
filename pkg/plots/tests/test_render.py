import subprocess
import sys

import numpy as np
import pytest

from icnof_plots import SchemaError, SurfaceTable, render_regions, render_surface
from icnof_plots.cli import main


def write(path, text):
    path.write_text(text)
    return str(path)


@pytest.fixture
def flat_surface(tmp_path):
    rows = ["alpha,beta,xi_bits"]
    for a in (0.5, 1.0, 1.5):
        for b in (0.5, 1.0):
            rows.append(f"{a},{b},0")
    return write(tmp_path / "flat.csv", "\n".join(rows) + "\n")


@pytest.fixture
def spike_surface(tmp_path):
    rows = ["alpha,beta,xi_bits"]
    for a in (0.5, 1.0, 1.5):
        for b in (0.5, 1.0):
            xi = 2.25 if (a, b) == (1.0, 0.5) else 0.125
            rows.append(f"{a},{b},{xi}")
    return write(tmp_path / "spike.csv", "\n".join(rows) + "\n")


def test_surface_table_parsing_and_max(spike_surface):
    table = SurfaceTable.from_csv(spike_surface)
    assert len(table.rows) == 6
    assert table.maximum() == (1.0, 0.5, 2.25)


def test_surface_table_rejects_bad_schema(tmp_path):
    with pytest.raises(SchemaError):
        SurfaceTable.from_csv(write(tmp_path / "h.csv", "a,b,c\n1,2,3\n"))
    with pytest.raises(SchemaError):
        SurfaceTable.from_csv(write(tmp_path / "dup.csv", "alpha,beta,xi_bits\n1,2,0.5\n1,2,0.7\n"))
    with pytest.raises(SchemaError):
        SurfaceTable.from_csv(write(tmp_path / "neg.csv", "alpha,beta,xi_bits\n1,2,-0.5\n"))
    with pytest.raises(SchemaError):
        SurfaceTable.from_csv(write(tmp_path / "empty.csv", "alpha,beta,xi_bits\n"))


def test_render_surface_flat(flat_surface, tmp_path):
    out = tmp_path / "flat.png"
    summary = render_surface(flat_surface, str(out))
    assert out.exists() and out.stat().st_size > 0
    assert summary["max"]["xi_bits"] == 0.0
    assert summary["empty_cells"] == 0


def test_render_surface_spike_annotates_cell(spike_surface, tmp_path):
    out = tmp_path / "spike.png"
    summary = render_surface(spike_surface, str(out))
    assert summary["max"] == {"alpha": 1.0, "beta": 0.5, "xi_bits": 2.25}


def test_render_surface_empty_cells(tmp_path):
    csv_path = write(
        tmp_path / "holes.csv",
        "alpha,beta,xi_bits\n-0.5,1.0,\n0.5,1.0,0.75\n",
    )
    out = tmp_path / "holes.png"
    summary = render_surface(csv_path, str(out))
    assert summary["empty_cells"] == 1
    assert summary["max"]["xi_bits"] == 0.75


def test_render_surface_deterministic(spike_surface, tmp_path):
    out1 = tmp_path / "a.png"
    out2 = tmp_path / "b.png"
    render_surface(spike_surface, str(out1))
    render_surface(spike_surface, str(out2))
    assert out1.read_bytes() == out2.read_bytes()


def test_render_regions_identical_and_nested(tmp_path):
    front = "r1,r2\n0,1\n0.5,1\n1,0.5\n1,0\n"
    inner_csv = write(tmp_path / "in.csv", front)
    outer_csv = write(tmp_path / "out.csv", front)
    out = tmp_path / "regions.png"
    summary = render_regions(inner_csv, outer_csv, str(out))
    assert out.exists() and out.stat().st_size > 0
    assert summary["inner_points"] == summary["outer_points"]

    bigger = "r1,r2\n0,2\n1,1.5\n2,0\n"
    outer_csv = write(tmp_path / "big.csv", bigger)
    summary = render_regions(inner_csv, outer_csv, str(out))
    inner = np.array(summary["inner_points"])
    outer = np.array(summary["outer_points"])
    # inner curve nowhere above the outer curve
    for x, y in inner:
        y_out = np.interp(x, outer[:, 0], outer[:, 1])
        assert y <= y_out + 1e-9


def test_render_regions_schema_mismatch(tmp_path):
    good = write(tmp_path / "good.csv", "r1,r2\n0,1\n1,0\n")
    bad = write(tmp_path / "bad.csv", "x,y\n0,1\n")
    with pytest.raises(SchemaError):
        render_regions(good, bad, str(tmp_path / "o.png"))
    neg = write(tmp_path / "neg.csv", "r1,r2\n-1,0\n")
    with pytest.raises(SchemaError):
        render_regions(neg, good, str(tmp_path / "o.png"))


def test_cli_exit_codes(flat_surface, tmp_path, capsys):
    assert main(["surface", flat_surface, str(tmp_path / "s.png")]) == 0
    assert "max" in capsys.readouterr().out
    bad = write(tmp_path / "bad.csv", "nope\n")
    assert main(["surface", bad, str(tmp_path / "s2.png")]) == 2
    assert main(["surface", str(tmp_path / "missing.csv"), str(tmp_path / "s3.png")]) == 2


def run_primary(args):
    proc = subprocess.run(["icnof", *args], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return proc


@pytest.fixture(scope="module")
def real_outputs(tmp_path_factory):
    # Real toolkit outputs, produced through its public CLI only.
    tmp = tmp_path_factory.mktemp("real")
    surface = tmp / "surface.csv"
    run_primary(
        [
            "sweep", "--snr-db", "20", "--alpha", "0.4:1.2:0.4", "--beta", "0.5:1.5:0.5",
            "--rho-steps", "9", "--mu-steps", "9", "--conv-rho-steps", "33",
            "--frontier-samples", "128", "--threads", "1", "-o", str(surface),
        ]
    )
    ach = tmp / "achievable.csv"
    conv = tmp / "converse.csv"
    common = ["--snr-db", "20", "--alpha", "0.5", "--beta", "1.0", "--frontier-samples", "128"]
    run_primary(["region", "achievable", *common, "--rho-steps", "9", "--mu-steps", "9", "-o", str(ach)])
    run_primary(["region", "converse", *common, "--conv-rho-steps", "65", "-o", str(conv)])
    return {"surface": surface, "achievable": ach, "converse": conv, "dir": tmp}


def test_surface_on_real_output(real_outputs):
    out = real_outputs["dir"] / "surface.png"
    summary = render_surface(str(real_outputs["surface"]), str(out))
    assert out.exists() and out.stat().st_size > 0
    # annotated maximum equals the CSV maximum exactly
    rows = real_outputs["surface"].read_text().strip().splitlines()[1:]
    vals = [(float(a), float(b), float(x)) for a, b, x in (r.split(",") for r in rows) if x]
    best = max(vals, key=lambda v: v[2])
    assert summary["max"] == {"alpha": best[0], "beta": best[1], "xi_bits": best[2]}


def test_regions_on_real_output(real_outputs):
    out = real_outputs["dir"] / "regions.png"
    summary = render_regions(
        str(real_outputs["achievable"]), str(real_outputs["converse"]), str(out)
    )
    assert out.exists() and out.stat().st_size > 0
    for key in ("inner_points", "outer_points"):
        curve = np.array(summary[key])
        assert np.all(np.diff(curve[:, 0]) > 0)
        assert np.all(np.diff(curve[:, 1]) <= 1e-9)  # monotone nonincreasing


def test_plots_console_script():
    proc = subprocess.run(["plots", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "surface" in proc.stdout and "regions" in proc.stdout
