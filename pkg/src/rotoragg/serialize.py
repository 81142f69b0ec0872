"""File formats: lattice value dumps, graph dumps, and instance text.

Three families of artifacts round-trip through here:

* per-site integer values (odometers, rotor slots) as a JSON array of
  ``{"x": int, "y": int, "value": int}`` records or as ``x,y,value`` CSV;
* diamond graphs as JSON objects or CSV rows carrying each vertex's
  coordinates, sink flag and ordered edge targets;
* general multigraph instances (graph + rotors + chips) as a line-oriented
  text block, used when an oracle needs to dump a counterexample.

Files are written atomically (temp file + rename in the target directory).
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile

import numpy as np

from .engine import DirectedMultigraph


def atomic_write_text(path: str, text: str) -> None:
    atomic_write_bytes(path, text.encode("utf-8"))


def atomic_write_bytes(path: str, data: bytes) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# Per-site value records
# ---------------------------------------------------------------------------

def values_to_json_text(coords: np.ndarray, values: np.ndarray) -> str:
    records = [{"x": int(x), "y": int(y), "value": int(v)}
               for (x, y), v in zip(coords, values)]
    return json.dumps(records, indent=0) + "\n"


def values_from_json_text(text: str) -> tuple[np.ndarray, np.ndarray]:
    records = json.loads(text)
    coords = np.array([(r["x"], r["y"]) for r in records],
                      dtype=np.int64).reshape(len(records), 2)
    values = np.array([r["value"] for r in records], dtype=np.int64)
    return coords, values


def values_to_csv_text(coords: np.ndarray, values: np.ndarray) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["x", "y", "value"])
    for (x, y), v in zip(coords, values):
        writer.writerow([int(x), int(y), int(v)])
    return buf.getvalue()


def values_from_csv_text(text: str) -> tuple[np.ndarray, np.ndarray]:
    rows = list(csv.DictReader(io.StringIO(text)))
    coords = np.array([(int(r["x"]), int(r["y"])) for r in rows],
                      dtype=np.int64).reshape(len(rows), 2)
    values = np.array([int(r["value"]) for r in rows], dtype=np.int64)
    return coords, values


# ---------------------------------------------------------------------------
# Diamond graph dumps
# ---------------------------------------------------------------------------

def _vertex_records(graph: DirectedMultigraph, coords: np.ndarray) -> list[dict]:
    records = []
    for v in range(graph.num_vertices):
        targets = [[int(coords[graph.target(v, i)][0]),
                    int(coords[graph.target(v, i)][1])]
                   for i in range(graph.degree(v))]
        records.append({"x": int(coords[v][0]), "y": int(coords[v][1]),
                        "sink": bool(graph.is_sink[v]), "targets": targets})
    return records


def graph_to_json_text(n: int, graph: DirectedMultigraph,
                       coords: np.ndarray) -> str:
    obj = {"radius": n, "vertices": _vertex_records(graph, coords)}
    return json.dumps(obj, indent=0) + "\n"


def graph_from_json_text(text: str
                         ) -> tuple[int, DirectedMultigraph, np.ndarray]:
    obj = json.loads(text)
    records = obj["vertices"]
    coords = np.array([(r["x"], r["y"]) for r in records], dtype=np.int64)
    index = {(int(x), int(y)): v for v, (x, y) in enumerate(coords)}
    out_edges = [[index[tuple(t)] for t in r["targets"]] for r in records]
    sinks = [v for v, r in enumerate(records) if r["sink"]]
    return int(obj["radius"]), DirectedMultigraph.from_out_edges(
        out_edges, sinks), coords


def graph_to_csv_text(n: int, graph: DirectedMultigraph,
                      coords: np.ndarray) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["radius", n])
    writer.writerow(["x", "y", "sink", "targets"])
    for r in _vertex_records(graph, coords):
        flat = " ".join(f"{tx},{ty}" for tx, ty in r["targets"])
        writer.writerow([r["x"], r["y"], int(r["sink"]), flat])
    return buf.getvalue()


def graph_from_csv_text(text: str
                        ) -> tuple[int, DirectedMultigraph, np.ndarray]:
    rows = list(csv.reader(io.StringIO(text)))
    n = int(rows[0][1])
    body = rows[2:]
    coords = np.array([(int(r[0]), int(r[1])) for r in body], dtype=np.int64)
    index = {(int(x), int(y)): v for v, (x, y) in enumerate(coords)}
    out_edges = []
    sinks = []
    for v, r in enumerate(body):
        if int(r[2]):
            sinks.append(v)
        targets = []
        if r[3].strip():
            for token in r[3].split():
                tx, ty = token.split(",")
                targets.append(index[(int(tx), int(ty))])
        out_edges.append(targets)
    return n, DirectedMultigraph.from_out_edges(out_edges, sinks), coords


def graphs_equal(a: DirectedMultigraph, b: DirectedMultigraph) -> bool:
    return (np.array_equal(a.out_offsets, b.out_offsets)
            and np.array_equal(a.out_targets, b.out_targets)
            and np.array_equal(a.is_sink, b.is_sink))


# ---------------------------------------------------------------------------
# General multigraph instances
# ---------------------------------------------------------------------------

def instance_to_text(graph: DirectedMultigraph, rho: np.ndarray,
                     sigma: np.ndarray) -> str:
    lines = ["rotor-instance v1", f"vertices {graph.num_vertices}",
             "sinks " + " ".join(str(int(s))
                                 for s in np.flatnonzero(graph.is_sink))]
    for v in range(graph.num_vertices):
        targets = " ".join(str(graph.target(v, i))
                           for i in range(graph.degree(v)))
        lines.append(f"out {v}: {targets}".rstrip())
    for v in np.flatnonzero(~graph.is_sink):
        lines.append(f"rotor {int(v)}: {int(rho[v])}")
    for v in range(graph.num_vertices):
        lines.append(f"chips {v}: {int(sigma[v])}")
    return "\n".join(lines) + "\n"


def instance_to_json_text(graph: DirectedMultigraph, rho: np.ndarray,
                          sigma: np.ndarray,
                          fires: np.ndarray | None = None) -> str:
    """Structured form: topology plus one state record per vertex carrying
    its rotor slot, chip count and (optionally) firing count."""
    if fires is None:
        fires = np.zeros(graph.num_vertices, dtype=np.int64)
    state = [{"v": v, "rotor": int(rho[v]), "chips": int(sigma[v]),
              "fires": int(fires[v])} for v in range(graph.num_vertices)]
    obj = {
        "sinks": [int(s) for s in np.flatnonzero(graph.is_sink)],
        "out": [[graph.target(v, i) for i in range(graph.degree(v))]
                for v in range(graph.num_vertices)],
        "state": state,
    }
    return json.dumps(obj, indent=0) + "\n"


def instance_from_json_text(text: str) -> tuple[
        DirectedMultigraph, np.ndarray, np.ndarray, np.ndarray]:
    obj = json.loads(text)
    graph = DirectedMultigraph.from_out_edges(obj["out"], obj["sinks"])
    rho = np.zeros(graph.num_vertices, dtype=np.int64)
    sigma = np.zeros(graph.num_vertices, dtype=np.int64)
    fires = np.zeros(graph.num_vertices, dtype=np.int64)
    for record in obj["state"]:
        v = record["v"]
        rho[v] = record["rotor"]
        sigma[v] = record["chips"]
        fires[v] = record["fires"]
    return graph, rho, sigma, fires


def instance_from_text(text: str
                       ) -> tuple[DirectedMultigraph, np.ndarray, np.ndarray]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if lines[0] != "rotor-instance v1":
        raise ValueError("not a rotor-instance v1 block")
    num_vertices = int(lines[1].split()[1])
    sinks = [int(tok) for tok in lines[2].split()[1:]]
    out_edges: list[list[int]] = [[] for _ in range(num_vertices)]
    rho = np.zeros(num_vertices, dtype=np.int64)
    sigma = np.zeros(num_vertices, dtype=np.int64)
    for line in lines[3:]:
        head, _, rest = line.partition(":")
        kind, v = head.split()
        v = int(v)
        tokens = rest.split()
        if kind == "out":
            out_edges[v] = [int(t) for t in tokens]
        elif kind == "rotor":
            rho[v] = int(tokens[0])
        elif kind == "chips":
            sigma[v] = int(tokens[0])
        else:
            raise ValueError(f"unknown record {kind!r}")
    return DirectedMultigraph.from_out_edges(out_edges, sinks), rho, sigma


# ---------------------------------------------------------------------------
# Verification reports
# ---------------------------------------------------------------------------

VERIFY_COLUMNS = ["n", "chips", "is_diamond", "odometer_match", "wall_ms"]


def verify_rows_to_csv_text(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(VERIFY_COLUMNS)
    for r in rows:
        writer.writerow([r.n, r.chips, int(r.is_diamond),
                         int(r.odometer_match), f"{r.wall_ms:.3f}"])
    return buf.getvalue()


def verify_rows_to_json_text(rows) -> str:
    records = [{"n": r.n, "chips": r.chips, "is_diamond": r.is_diamond,
                "odometer_match": r.odometer_match,
                "wall_ms": round(r.wall_ms, 3)} for r in rows]
    return json.dumps(records, indent=0) + "\n"
