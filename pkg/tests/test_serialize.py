"""Round-trips for the value, graph and instance formats."""

import os

import numpy as np
import pytest

from rotoragg import engine, lattice, serialize


def test_values_json_round_trip():
    dg = lattice.build_diamond_graph(3)
    interior = ~dg.graph.is_sink
    coords = dg.coords[interior]
    values = lattice.odometer_formula(dg)[interior]
    text = serialize.values_to_json_text(coords, values)
    coords2, values2 = serialize.values_from_json_text(text)
    assert np.array_equal(coords, coords2)
    assert np.array_equal(values, values2)


def test_values_csv_round_trip():
    coords = np.array([(0, 0), (2, -1), (-3, 1)])
    values = np.array([4, -2, 7])
    text = serialize.values_to_csv_text(coords, values)
    assert text.splitlines()[0] == "x,y,value"
    coords2, values2 = serialize.values_from_csv_text(text)
    assert np.array_equal(coords, coords2)
    assert np.array_equal(values, values2)


@pytest.mark.parametrize("form", ["json", "csv"])
def test_graph_round_trip(form):
    dg = lattice.build_diamond_graph(4)
    if form == "json":
        text = serialize.graph_to_json_text(4, dg.graph, dg.coords)
        n, graph, coords = serialize.graph_from_json_text(text)
    else:
        text = serialize.graph_to_csv_text(4, dg.graph, dg.coords)
        n, graph, coords = serialize.graph_from_csv_text(text)
    assert n == 4
    assert serialize.graphs_equal(graph, dg.graph)
    assert np.array_equal(coords, dg.coords)


def test_instance_round_trip():
    rng = np.random.default_rng(77)
    for _ in range(50):
        graph, rho, sigma = engine.random_multigraph(rng)
        text = serialize.instance_to_text(graph, rho, sigma)
        graph2, rho2, sigma2 = serialize.instance_from_text(text)
        assert serialize.graphs_equal(graph, graph2)
        assert np.array_equal(rho, rho2)
        assert np.array_equal(sigma, sigma2)
        assert serialize.instance_to_text(graph2, rho2, sigma2) == text


def test_instance_rejects_garbage():
    with pytest.raises(ValueError):
        serialize.instance_from_text("not an instance\n")


def test_instance_json_round_trip():
    rng = np.random.default_rng(5)
    graph, rho, sigma = engine.random_multigraph(rng)
    fires = engine.zero_firing_vector(graph)
    fires[graph.non_sinks] = rng.integers(0, 30, size=graph.non_sinks.size)
    text = serialize.instance_to_json_text(graph, rho, sigma, fires)
    graph2, rho2, sigma2, fires2 = serialize.instance_from_json_text(text)
    assert serialize.graphs_equal(graph, graph2)
    assert np.array_equal(rho, rho2)
    assert np.array_equal(sigma, sigma2)
    assert np.array_equal(fires, fires2)


def test_atomic_write_replaces_and_cleans_up(tmp_path):
    path = tmp_path / "report.csv"
    serialize.atomic_write_text(str(path), "first\n")
    serialize.atomic_write_text(str(path), "second\n")
    assert path.read_text() == "second\n"
    leftovers = [p for p in os.listdir(tmp_path) if p != "report.csv"]
    assert leftovers == []


def test_verify_rows_csv_header():
    rows = []
    text = serialize.verify_rows_to_csv_text(rows)
    assert text.strip() == "n,chips,is_diamond,odometer_match,wall_ms"
