"""Growth process: diamonds, measured odometers, flow accounting."""

import numpy as np
import pytest

from rotoragg import aggregation, engine, lattice


def diamond_points(n):
    return {(x, y) for x in range(-n, n + 1) for y in range(-n, n + 1)
            if abs(x) + abs(y) <= n}


# ---------------------------------------------------------------------------
# release radius schedule
# ---------------------------------------------------------------------------

def test_release_radius_examples():
    assert aggregation.r_of_m(0) == 1
    assert aggregation.r_of_m(3) == 1
    assert aggregation.r_of_m(4) == 2
    with pytest.raises(ValueError):
        aggregation.r_of_m(-1)


def test_release_radius_is_minimal():
    for m in range(0, 500):
        r = aggregation.r_of_m(m)
        assert 2 * r * (r + 1) > m
        assert r == 0 or 2 * (r - 1) * r <= m


# ---------------------------------------------------------------------------
# growth
# ---------------------------------------------------------------------------

def test_one_chip_is_the_origin():
    state = aggregation.aggregate(1)
    assert state.occupied_points() == {(0, 0)}
    assert aggregation.is_diamond(state, 0)
    assert state.released == 0


def test_five_chips_fill_the_first_diamond():
    state = aggregation.aggregate(5)
    assert state.occupied_points() == diamond_points(1)
    assert aggregation.is_diamond(state, 1)


def test_aggregate_rejects_bad_arguments():
    with pytest.raises(ValueError):
        aggregation.aggregate(0)
    with pytest.raises(ValueError):
        aggregation.aggregate(5, "sideways")


def test_is_diamond_rejects_perturbed_clusters():
    state = aggregation.aggregate(5)
    assert aggregation.is_diamond(state, 1)
    # swap one boundary site for an outside site: same size, wrong set
    state.occupied[state.window.site(0, 1)] = False
    state.occupied[state.window.site(2, 0)] = True
    assert not aggregation.is_diamond(state, 1)


@pytest.mark.parametrize("variant", ["standard", "modified"])
def test_growth_adds_one_site_per_release(variant):
    previous = set()
    for chips in range(1, 30):
        state = aggregation.aggregate(chips, variant)
        points = state.occupied_points()
        assert len(points) == chips
        assert previous <= points
        previous = points


def test_runs_are_deterministic():
    a = aggregation.aggregate(41, "standard")
    b = aggregation.aggregate(41, "standard")
    assert (a.occupied == b.occupied).all()
    assert (a.rotors == b.rotors).all()
    assert (a.odometer == b.odometer).all()


@pytest.mark.parametrize("variant", ["standard", "modified"])
def test_intermediate_containment(variant):
    # the cluster after m releases sits between consecutive diamonds
    for m in range(0, 61):
        state = aggregation.aggregate(m + 1, variant)
        r = aggregation.r_of_m(m)
        occ = state.occupied
        ell1 = state.window.ell1
        assert occ[ell1 <= r - 1].all(), (variant, m)
        assert not occ[ell1 > r].any(), (variant, m)


def test_checkpoint_stream_matches_single_run():
    seen = []
    for n, state in aggregation.aggregate_checkpoints(4):
        seen.append(n)
        assert aggregation.is_diamond(state, n)
    assert seen == [0, 1, 2, 3, 4]
    full = aggregation.aggregate(2 * 4 * 5 + 1)
    assert (state.occupied == full.occupied).all()
    assert (state.odometer == full.odometer).all()


def test_cluster_invariant_checker():
    state = aggregation.aggregate(7)
    state.check_invariants()
    state.released += 1
    with pytest.raises(aggregation.AggregationError):
        state.check_invariants()


# ---------------------------------------------------------------------------
# kernel vs engine-walk reference
# ---------------------------------------------------------------------------

def reference_aggregate(chips, variant):
    """Independent route: one engine.rotor_walk per release on the diamond
    graph, stop sets rebuilt from the cluster before every walk."""
    radius = aggregation.working_radius(chips)
    dg = lattice.build_diamond_graph(radius)
    rho = lattice.initial_rotors(dg)
    odometer = engine.zero_firing_vector(dg.graph)
    occupied = {(0, 0)}
    for m in range(chips - 1):
        stop = np.ones(dg.num_vertices, dtype=bool)
        r = aggregation.r_of_m(m)
        for (x, y) in occupied:
            if variant == "modified" and abs(x) + abs(y) >= r:
                continue
            stop[dg.vertex(x, y)] = False
        end, rho, steps = engine.rotor_walk(dg.graph, rho, dg.origin, stop)
        odometer += steps
        occupied.add(tuple(int(c) for c in dg.coords[end]))
    return dg, occupied, rho, odometer


@pytest.mark.parametrize("variant", ["standard", "modified"])
@pytest.mark.parametrize("chips", [2, 5, 13, 25, 41])
def test_kernel_matches_walk_by_walk_reference(chips, variant):
    state = aggregation.aggregate(chips, variant)
    dg, occupied, rho, odometer = reference_aggregate(chips, variant)
    assert state.occupied_points() == occupied
    win = state.window
    for v in range(dg.num_vertices):
        x, y = (int(c) for c in dg.coords[v])
        s = win.site(x, y)
        assert state.odometer[s] == odometer[v]
        assert int(state.rotors[s]) == int(rho[v])


# ---------------------------------------------------------------------------
# measured odometer vs closed form
# ---------------------------------------------------------------------------

def test_first_checkpoint_odometer():
    state = aggregation.aggregate(5, "modified")
    origin = state.window.origin
    assert state.odometer[origin] == 4
    assert state.odometer.sum() == 4


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
def test_measured_vs_formula_small(n):
    report = aggregation.measured_vs_formula(n)
    assert report.modified_equal and report.standard_equal
    assert report.first_mismatch is None


def test_measured_vs_formula_rejects_zero():
    with pytest.raises(ValueError):
        aggregation.measured_vs_formula(0)


# ---------------------------------------------------------------------------
# flow accounting
# ---------------------------------------------------------------------------

def test_flow_audit_of_nothing():
    dg = lattice.build_diamond_graph(2)
    ledger = aggregation.flow_audit(dg, lattice.initial_rotors(dg),
                                    engine.zero_firing_vector(dg.graph))
    assert not ledger.net.any()


def test_flow_audit_radius_one():
    dg = lattice.build_diamond_graph(1)
    u = lattice.odometer_formula(dg)
    ledger = aggregation.flow_audit(dg, lattice.initial_rotors(dg), u)
    sinks = dg.graph.is_sink
    assert (ledger.inflow[sinks] == 1).all()
    assert ledger.net[dg.origin] == -4
    initial = engine.zero_chips(dg.graph)
    initial[dg.origin] = 5
    assert (ledger.final_chips(initial) == 1).all()


@pytest.mark.parametrize("n", [2, 5, 9, 14])
def test_flow_audit_reproduces_uniform_chips(n):
    dg = lattice.build_diamond_graph(n)
    u = lattice.odometer_formula(dg)
    ledger = aggregation.flow_audit(dg, lattice.initial_rotors(dg), u)
    initial = engine.zero_chips(dg.graph)
    initial[dg.origin] = 2 * n * n + 2 * n + 1
    assert (ledger.final_chips(initial) == 1).all()
    assert (ledger.inflow[dg.graph.is_sink] == 1).all()


def test_verification_rows_report():
    rows = list(aggregation.verification_rows(3))
    assert [r.n for r in rows] == [0, 1, 2, 3]
    assert all(r.is_diamond and r.odometer_match for r in rows)
    assert [r.chips for r in rows] == [1, 5, 13, 25]
