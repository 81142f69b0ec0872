"""Command-line surface: exit codes, files, determinism."""

import numpy as np
import pytest

from rotoragg import cli, lattice, render, serialize


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# verify-diamond
# ---------------------------------------------------------------------------

def test_verify_diamond_small(capsys):
    code, out, err = run(capsys, "verify-diamond", "--n-max", "2")
    assert code == 0 and err == ""
    lines = out.strip().splitlines()
    assert lines[0] == "n,chips,is_diamond,odometer_match,wall_ms"
    assert len(lines) == 4  # n = 0, 1, 2
    assert lines[1].startswith("0,1,1,1,")
    assert lines[2].startswith("1,5,1,1,")


def test_verify_diamond_json_to_file(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, _, _ = run(capsys, "verify-diamond", "--n-max", "1",
                     "--format", "json", "--out", str(out_path))
    assert code == 0
    import json
    rows = json.loads(out_path.read_text())
    assert rows[-1]["n"] == 1 and rows[-1]["is_diamond"] is True


def test_verify_diamond_usage_error():
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify-diamond", "--n-max", "0"])
    assert exc.value.code == 2


# ---------------------------------------------------------------------------
# check-odometer
# ---------------------------------------------------------------------------

def test_check_odometer_small(capsys):
    code, out, err = run(capsys, "check-odometer", "--n-max", "3")
    assert code == 0 and err == ""
    assert out.count("all match") == 3


def test_check_odometer_detects_a_corrupted_formula(monkeypatch, capsys):
    # Drop the correction set: the measured odometer then disagrees with
    # the formula at some corrected vertex, which must be reported.
    real = lattice.exceptional_mask_values

    def no_corrections(n, x, y):
        return np.zeros(np.shape(x), dtype=bool)

    monkeypatch.setattr(lattice, "exceptional_mask_values", no_corrections)
    code, out, err = run(capsys, "check-odometer", "--n-max", "5")
    monkeypatch.setattr(lattice, "exceptional_mask_values", real)
    assert code == 1
    assert "FAIL" in err and "vertex (" in err
    # the mismatch lies where the dropped correction would have applied
    x, y = err.split("vertex (")[1].split(")")[0].split(",")
    assert real(5, np.array([int(x)]), np.array([int(y)]))[0]


# ---------------------------------------------------------------------------
# render
# ---------------------------------------------------------------------------

def test_render_smallest_diamond(tmp_path, capsys):
    out_path = tmp_path / "d1.ppm"
    code, out, _ = run(capsys, "render", "--n", "1", "--out", str(out_path))
    assert code == 0
    image = render.read_ppm(out_path.read_bytes())
    assert image.shape == (3, 3, 3)
    colored = (image != 255).any(axis=2)
    assert int(colored.sum()) == 5
    assert not colored[0, 0] and not colored[2, 2]  # box corners stay white


def test_render_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.ppm", tmp_path / "b.ppm"
    assert run(capsys, "render", "--n", "4", "--out", str(a))[0] == 0
    assert run(capsys, "render", "--n", "4", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_render_unwritable_path(capsys):
    code, _, err = run(capsys, "render", "--n", "1",
                       "--out", "/nonexistent-dir/x.ppm")
    assert code == 1 and "cannot write" in err


# ---------------------------------------------------------------------------
# sap-test
# ---------------------------------------------------------------------------

def test_sap_test_small_sweep(capsys):
    code, out, err = run(capsys, "sap-test", "--trials", "40",
                         "--max-vertices", "5", "--bound", "4", "--seed", "9")
    assert code == 0 and "40 instances passed" in out


def test_sap_test_seed_determinism(capsys):
    args = ["sap-test", "--trials", "15", "--max-vertices", "4",
            "--bound", "3", "--seed", "123"]
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1.split("(")[1] == out2.split("(")[1]


def test_sap_test_rejects_big_graphs():
    with pytest.raises(SystemExit) as exc:
        cli.main(["sap-test", "--max-vertices", "9"])
    assert exc.value.code == 2


# ---------------------------------------------------------------------------
# dump
# ---------------------------------------------------------------------------

def test_dump_odometer_radius_one(capsys):
    code, out, _ = run(capsys, "dump", "--n", "1", "--what", "odometer")
    assert code == 0
    coords, values = serialize.values_from_json_text(out)
    assert coords.tolist() == [[0, 0]] and values.tolist() == [4]


def test_dump_odometer_radius_two(capsys):
    code, out, _ = run(capsys, "dump", "--n", "2", "--what", "odometer")
    assert code == 0
    coords, values = serialize.values_from_json_text(out)
    records = {tuple(c): v for c, v in zip(coords.tolist(), values.tolist())}
    assert records[(0, 0)] == 12
    assert all(records[z] == 2 for z in [(0, 1), (1, 0), (0, -1), (-1, 0)])


def test_dump_rotors_csv_round_trip(tmp_path, capsys):
    out_path = tmp_path / "rotors.csv"
    code, _, _ = run(capsys, "dump", "--n", "3", "--what", "rotors",
                     "--format", "csv", "--out", str(out_path))
    assert code == 0
    coords, values = serialize.values_from_csv_text(out_path.read_text())
    dg = lattice.build_diamond_graph(3)
    interior = ~dg.graph.is_sink
    assert np.array_equal(coords, dg.coords[interior])
    assert np.array_equal(values, lattice.predicted_final_rotors(dg)[interior])


def test_dump_graph_round_trip(tmp_path, capsys):
    out_path = tmp_path / "graph.json"
    code, _, _ = run(capsys, "dump", "--n", "2", "--what", "graph",
                     "--out", str(out_path))
    assert code == 0
    n, graph, coords = serialize.graph_from_json_text(out_path.read_text())
    dg = lattice.build_diamond_graph(2)
    assert n == 2
    assert serialize.graphs_equal(graph, dg.graph)
    assert np.array_equal(coords, dg.coords)


def test_dump_rejects_unknown_selector():
    with pytest.raises(SystemExit) as exc:
        cli.main(["dump", "--n", "2", "--what", "chips"])
    assert exc.value.code == 2


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------

def test_simulate_checkpoint_summary(capsys):
    import json
    code, out, _ = run(capsys, "simulate", "--chips", "13",
                       "--variant", "modified")
    assert code == 0
    record = json.loads(out)
    assert record["cluster_size"] == 13
    assert record["checkpoint"] == 2 and record["is_diamond"] is True


def test_simulate_off_checkpoint(capsys):
    import json
    code, out, _ = run(capsys, "simulate", "--chips", "7")
    record = json.loads(out)
    assert code == 0
    assert record["checkpoint"] is None and record["is_diamond"] is None
    assert record["cluster_size"] == 7
