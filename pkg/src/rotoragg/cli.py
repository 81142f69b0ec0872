"""Command-line surface: verification sweeps, simulations, renders, dumps.

Exit codes: 0 = all checks passed, 1 = a mathematical check failed (or an
output path was unwritable), 2 = usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional, Sequence

import numpy as np

from . import aggregation, lattice, render, serialize
from .engine import (apply_firing_vector, is_acyclic, pop_cycles,
                     random_multigraph, sap_bruteforce_oracle, zero_chips)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        serialize.atomic_write_text(out, text)


def _cmd_verify_diamond(args) -> int:
    rows = []
    first_bad = None
    for row in aggregation.verification_rows(args.n_max, args.variant):
        rows.append(row)
        if first_bad is None and not (row.is_diamond and row.odometer_match):
            first_bad = row.n
    text = (serialize.verify_rows_to_csv_text(rows) if args.format == "csv"
            else serialize.verify_rows_to_json_text(rows))
    _emit(text, args.out)
    if first_bad is not None:
        print(f"FAIL: first failing checkpoint n={first_bad}", file=sys.stderr)
        return 1
    return 0


def _first_diff(coords: np.ndarray, got: np.ndarray, want: np.ndarray) -> str:
    idx = int(np.flatnonzero(got != want)[0])
    x, y = int(coords[idx][0]), int(coords[idx][1])
    return f"vertex ({x}, {y}): got {int(got[idx])}, expected {int(want[idx])}"


def _cmd_check_odometer(args) -> int:
    modified_run = aggregation.aggregate_checkpoints(args.n_max, "modified")
    standard_run = aggregation.aggregate_checkpoints(args.n_max, "standard")
    for (n, mod_state), (_, std_state) in zip(modified_run, standard_run):
        if n == 0:
            continue
        x, y = mod_state.window.coords()
        grid_coords = np.stack([x, y], axis=1)
        expected = lattice.odometer_values(n, x, y)
        if (mod_state.odometer != expected).any():
            print(f"FAIL n={n}: modified measured odometer, "
                  + _first_diff(grid_coords, mod_state.odometer, expected),
                  file=sys.stderr)
            return 1
        if (std_state.odometer != expected).any():
            print(f"FAIL n={n}: standard measured odometer, "
                  + _first_diff(grid_coords, std_state.odometer, expected),
                  file=sys.stderr)
            return 1

        dg = lattice.build_diamond_graph(n)
        rho0 = lattice.initial_rotors(dg)
        sigma0 = zero_chips(dg.graph)
        sigma0[dg.origin] = 2 * n * n + 2 * n + 1
        u = lattice.odometer_formula(dg)
        rho_n, sigma_n = apply_firing_vector(dg.graph, rho0, sigma0, u)
        ones = np.ones(dg.num_vertices, dtype=np.int64)
        if (sigma_n != ones).any():
            print(f"FAIL n={n}: chips after firing the closed form, "
                  + _first_diff(dg.coords, sigma_n, ones), file=sys.stderr)
            return 1
        if not is_acyclic(dg.graph, rho_n):
            print(f"FAIL n={n}: rotors after the closed form are cyclic",
                  file=sys.stderr)
            return 1
        predicted = lattice.predicted_final_rotors(dg)
        if (rho_n != predicted).any():
            print(f"FAIL n={n}: final rotors, "
                  + _first_diff(dg.coords, rho_n, predicted), file=sys.stderr)
            return 1

        rho_base, sigma_base = apply_firing_vector(
            dg.graph, rho0, sigma0, lattice.base_odometer(dg))
        rho_popped, sigma_popped, pops = pop_cycles(dg.graph, rho_base, sigma_base)
        c_mask = lattice.exceptional_set_mask(dg).astype(np.int64)
        if (pops != c_mask).any():
            print(f"FAIL n={n}: cycle-pop counts, "
                  + _first_diff(dg.coords, pops, c_mask), file=sys.stderr)
            return 1
        if (rho_popped != rho_n).any() or (sigma_popped != sigma_base).any():
            print(f"FAIL n={n}: cycle popping disturbed the final state",
                  file=sys.stderr)
            return 1
        print(f"n={n}: odometer identity, chip field and cycle pops all match")
    return 0


def _cmd_render(args) -> int:
    state = aggregation.aggregate(2 * args.n * (args.n + 1) + 1, "standard")
    image = render.render_cluster(state, args.n)
    try:
        serialize.atomic_write_bytes(args.out, render.ppm_bytes(image))
    except OSError as exc:
        print(f"cannot write {args.out}: {exc}", file=sys.stderr)
        return 1
    colored = int((image != 255).any(axis=2).sum())
    print(f"wrote {args.out}: {image.shape[1]}x{image.shape[0]} px, "
          f"{colored} occupied sites")
    return 0


def _cmd_sap_test(args) -> int:
    rng = np.random.default_rng(args.seed)
    started = time.perf_counter()
    vectors = 0
    for trial in range(args.trials):
        graph, rho, sigma = random_multigraph(
            rng, max_vertices=args.max_vertices, max_degree=3)
        cert = sap_bruteforce_oracle(graph, rho, sigma, args.bound, rng=rng)
        vectors += cert.num_vectors
        if not (cert.passed and cert.must_cycle_ok and cert.monotone_ok):
            reason = ("uniqueness" if not cert.passed else
                      "must-cycle" if not cert.must_cycle_ok else
                      "monotonicity")
            text = serialize.instance_to_text(graph, rho, sigma)
            if args.out:
                serialize.atomic_write_text(args.out, text)
                where = args.out
            else:
                sys.stderr.write(text)
                where = "stderr"
            print(f"FAIL: trial {trial} violated the {reason} check; "
                  f"instance dumped to {where}", file=sys.stderr)
            return 1
    elapsed = time.perf_counter() - started
    print(f"{args.trials} instances passed "
          f"({vectors} firing vectors enumerated, {elapsed:.1f}s)")
    return 0


def _cmd_dump(args) -> int:
    dg = lattice.build_diamond_graph(args.n)
    if args.what == "graph":
        text = (serialize.graph_to_json_text(args.n, dg.graph, dg.coords)
                if args.format == "json"
                else serialize.graph_to_csv_text(args.n, dg.graph, dg.coords))
    else:
        interior = ~dg.graph.is_sink
        values = (lattice.odometer_formula(dg) if args.what == "odometer"
                  else lattice.predicted_final_rotors(dg))
        coords, values = dg.coords[interior], values[interior]
        text = (serialize.values_to_json_text(coords, values)
                if args.format == "json"
                else serialize.values_to_csv_text(coords, values))
    try:
        _emit(text, args.out)
    except OSError as exc:
        print(f"cannot write {args.out}: {exc}", file=sys.stderr)
        return 1
    return 0


def _cmd_simulate(args) -> int:
    started = time.perf_counter()
    state = aggregation.aggregate(args.chips, args.variant)
    wall_ms = (time.perf_counter() - started) * 1e3
    occupied_radius = int(state.window.ell1[state.occupied].max())
    m = args.chips - 1
    if m == 0:
        checkpoint = 0
    else:
        r = aggregation.r_of_m(m - 1)
        checkpoint = r if 2 * r * (r + 1) == m else None
    record = {
        "chips": args.chips,
        "variant": args.variant,
        "cluster_size": state.cluster_size,
        "occupied_radius": occupied_radius,
        "checkpoint": checkpoint,
        "is_diamond": (aggregation.is_diamond(state, checkpoint)
                       if checkpoint is not None else None),
        "wall_ms": round(wall_ms, 3),
    }
    if args.format == "json":
        text = json.dumps(record, indent=0) + "\n"
    else:
        keys = list(record)
        text = (",".join(keys) + "\n"
                + ",".join(str(record[k]) for k in keys) + "\n")
    _emit(text, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rotoragg",
        description="Rotor-router aggregation on the layered square lattice: "
                    "verify exact diamond growth, check closed-form odometers, "
                    "render clusters and dump data.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-diamond",
                       help="grow one cluster and check every checkpoint "
                            "for exact diamond shape and odometer match")
    p.add_argument("--n-max", type=_positive_int, required=True)
    p.add_argument("--variant", choices=["standard", "modified"],
                   default="standard")
    p.add_argument("--out", help="report path (default: stdout)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(handler=_cmd_verify_diamond)

    p = sub.add_parser("check-odometer",
                       help="for each n: measured odometers vs the closed "
                            "form, the fired chip field, and cycle popping")
    p.add_argument("--n-max", type=_positive_int, required=True)
    p.set_defaults(handler=_cmd_check_odometer)

    p = sub.add_parser("render",
                       help="aggregate 2n(n+1)+1 chips and write a PPM of "
                            "the final rotor directions")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=["ppm"], default="ppm")
    p.set_defaults(handler=_cmd_render)

    p = sub.add_parser("sap-test",
                       help="brute-force odometer-uniqueness oracle on "
                            "seeded random multigraphs")
    p.add_argument("--trials", type=_positive_int, default=1000)
    p.add_argument("--max-vertices", type=_positive_int, default=6)
    p.add_argument("--bound", type=_positive_int, default=6)
    p.add_argument("--seed", type=_nonnegative_int, default=42)
    p.add_argument("--out", help="failure dump path (default: stderr)")
    p.set_defaults(handler=_cmd_sap_test)

    p = sub.add_parser("dump",
                       help="write the closed-form odometer, the predicted "
                            "final rotors, or the diamond graph")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--what", choices=["rotors", "odometer", "graph"],
                   required=True)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(handler=_cmd_dump)

    p = sub.add_parser("simulate",
                       help="run one aggregation and report a summary")
    p.add_argument("--chips", type=_positive_int, required=True)
    p.add_argument("--variant", choices=["standard", "modified"],
                   default="standard")
    p.add_argument("--out", help="summary path (default: stdout)")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(handler=_cmd_simulate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "sap-test" and args.max_vertices > 8:
        parser.error("--max-vertices must be at most 8 for the brute-force oracle")
    return args.handler(args)


if __name__ == "__main__":
    raise SystemExit(main())
