"""Rotor-router aggregation on the layered square lattice.

The cluster starts as the origin alone.  Each released chip performs a
rotor-router walk from the origin and settles at the first site where the
walk leaves its stopping set; the site joins the cluster and rotors are
never reset between releases.  Two stopping rules are supported:

* ``standard`` -- the walk stops at the first unoccupied site;
* ``modified`` -- the walk for release m stops on leaving the intersection
  of the cluster with the diamond of radius r_m - 1, where r_m is the
  smallest integer with 2 * r_m * (r_m + 1) > m.

The chip-by-chip walk is the reference dynamics here: the growth process is
simulated literally, one fire at a time, inside a preallocated dense window
(a hot loop compiled with numba).  The closed-form flow ledger in
:func:`flow_audit` provides the independent accounting route.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np
from numba import njit

from . import lattice
from .engine import edge_flows, zero_firing_vector


class AggregationError(RuntimeError):
    """A walk violated an invariant of the growth process."""


def r_of_m(m: int) -> int:
    """Smallest r >= 0 with 2 r (r + 1) > m."""
    if m < 0:
        raise ValueError("release index must be nonnegative")
    r = 0
    while 2 * r * (r + 1) <= m:
        r += 1
    return r


def working_radius(chips: int) -> int:
    """Window radius large enough for the whole run: one past the diamond
    the cluster can reach.  A walk halting at the first site outside its
    stopping set never strays beyond the cluster's 1-neighborhood."""
    return r_of_m(chips - 1) + 1


@njit(cache=True)
def _release_walkers(targets, ell1, rotors, occupied, odometer, origin,
                     m_start, m_stop, modified):
    """Run releases m_start..m_stop-1 in place.  Returns (m_done, code):
    code 1 = walk left the window, code 2 = walk stopped on an occupied
    site (the cluster did not grow)."""
    r = 1
    while 2 * r * (r + 1) <= m_start:
        r += 1
    for m in range(m_start, m_stop):
        while 2 * r * (r + 1) <= m:
            r += 1
        pos = origin
        while True:
            slot = (rotors[pos] + 1) & 3
            rotors[pos] = slot
            odometer[pos] += 1
            nxt = targets[pos, slot]
            if nxt < 0:
                return m, 1
            pos = nxt
            if modified:
                if (not occupied[pos]) or ell1[pos] >= r:
                    break
            else:
                if not occupied[pos]:
                    break
        if occupied[pos]:
            return m, 2
        occupied[pos] = True
    return m_stop, 0


@dataclass(eq=False)
class AggregationState:
    """Cluster, rotors and measured odometer of a (possibly partial) run."""

    variant: str
    window: lattice.LatticeWindow
    occupied: np.ndarray   # bool per window site
    rotors: np.ndarray     # uint8 per window site, slot index
    odometer: np.ndarray   # int64 per window site, fires since the start
    released: int = 0

    @property
    def cluster_size(self) -> int:
        return int(self.occupied.sum())

    def occupied_points(self) -> set[tuple[int, int]]:
        x, y = self.window.coords()
        return {(int(a), int(b)) for a, b in
                zip(x[self.occupied], y[self.occupied])}

    def check_invariants(self) -> None:
        if self.cluster_size != self.released + 1:
            raise AggregationError(
                f"cluster holds {self.cluster_size} sites after "
                f"{self.released} releases")


def _new_state(chips: int, variant: str) -> AggregationState:
    if chips < 1:
        raise ValueError("at least one chip is required")
    if variant not in ("standard", "modified"):
        raise ValueError(f"unknown variant {variant!r}")
    window = lattice.build_window(working_radius(chips))
    size = window.targets.shape[0]
    occupied = np.zeros(size, dtype=bool)
    occupied[window.origin] = True
    return AggregationState(
        variant=variant, window=window, occupied=occupied,
        rotors=np.zeros(size, dtype=np.uint8),
        odometer=np.zeros(size, dtype=np.int64))


def _advance(state: AggregationState, releases: int) -> None:
    m_done, code = _release_walkers(
        state.window.targets, state.window.ell1, state.rotors,
        state.occupied, state.odometer, state.window.origin,
        state.released, releases, state.variant == "modified")
    state.released = int(m_done)
    if code == 1:
        raise AggregationError(
            f"release {m_done}: walk left the working window of radius "
            f"{state.window.radius}")
    if code == 2:
        raise AggregationError(
            f"release {m_done}: walk stopped on an already occupied site")
    state.check_invariants()


def aggregate(chips: int, variant: str = "standard") -> AggregationState:
    """Grow the cluster by releasing chips - 1 walkers after the seed chip."""
    state = _new_state(chips, variant)
    _advance(state, chips - 1)
    return state


def aggregate_checkpoints(n_max: int, variant: str = "standard"
                          ) -> Iterator[tuple[int, AggregationState]]:
    """Single growth run to 2 n_max (n_max + 1) + 1 chips, yielding the live
    state at every checkpoint 2n(n+1) released chips, n = 0..n_max.

    The yielded state shares its arrays with the running simulation; consume
    or copy before advancing the iterator.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    chips = 2 * n_max * (n_max + 1) + 1
    state = _new_state(chips, variant)
    yield 0, state
    for n in range(1, n_max + 1):
        _advance(state, 2 * n * (n + 1))
        yield n, state


def is_diamond(state: AggregationState, n: int) -> bool:
    """Exact set equality of the cluster with the diamond of radius n."""
    if n > state.window.radius:
        return False
    return bool((state.occupied == (state.window.ell1 <= n)).all())


def odometer_matches_formula(state: AggregationState, n: int) -> bool:
    """Exact equality of the measured odometer with the closed form for the
    checkpoint 2n(n+1), including zero fires outside the interior of D_n."""
    x, y = state.window.coords()
    return bool((state.odometer == lattice.odometer_values(n, x, y)).all())


@dataclass
class OdometerReport:
    """Pointwise comparison of measured odometers against the closed form."""

    n: int
    modified_equal: bool
    standard_equal: bool
    first_mismatch: Optional[tuple[int, int, int, int]]  # x, y, got, want


def measured_vs_formula(n: int) -> OdometerReport:
    """Run the modified aggregation of 2n(n+1)+1 chips and compare its
    measured odometer with the closed form; also compare the standard run."""
    if n < 1:
        raise ValueError("n must be at least 1")
    chips = 2 * n * (n + 1) + 1
    modified = aggregate(chips, "modified")
    standard = aggregate(chips, "standard")
    x, y = modified.window.coords()
    expected = lattice.odometer_values(n, x, y)
    diffs = np.flatnonzero(modified.odometer != expected)
    first = None
    if diffs.size:
        s = int(diffs[0])
        first = (int(x[s]), int(y[s]), int(modified.odometer[s]),
                 int(expected[s]))
    return OdometerReport(
        n=n,
        modified_equal=diffs.size == 0,
        standard_equal=odometer_matches_formula(standard, n),
        first_mismatch=first)


@dataclass
class FlowLedger:
    """Chip bookkeeping for a firing vector: arrivals minus departures."""

    inflow: np.ndarray   # chips received per vertex
    outflow: np.ndarray  # chips sent per vertex (= the firing vector)
    net: np.ndarray      # inflow - outflow

    def final_chips(self, initial: np.ndarray) -> np.ndarray:
        return initial + self.net


def flow_audit(dg: lattice.DiamondGraph, rho: np.ndarray,
               u: np.ndarray) -> FlowLedger:
    """Closed-form per-vertex chip ledger of firing u from rotors rho,
    computed from per-edge flow counts without simulating any walk."""
    flows = edge_flows(dg.graph, rho, u)
    inflow = zero_firing_vector(dg.graph)
    np.add.at(inflow, dg.graph.out_targets, flows)
    return FlowLedger(inflow=inflow, outflow=u.astype(np.int64),
                      net=inflow - u)


@dataclass
class CheckpointRow:
    """One verification row: shape and odometer checks at a checkpoint."""

    n: int
    chips: int
    is_diamond: bool
    odometer_match: bool
    wall_ms: float


def verification_rows(n_max: int, variant: str = "standard"
                      ) -> Iterator[CheckpointRow]:
    """Drive one growth run and audit every checkpoint n = 0..n_max."""
    started = time.perf_counter()
    for n, state in aggregate_checkpoints(n_max, variant):
        shape_ok = is_diamond(state, n)
        odo_ok = (odometer_matches_formula(state, n) if n >= 1
                  else bool((state.odometer == 0).all()))
        yield CheckpointRow(
            n=n, chips=2 * n * (n + 1) + 1, is_diamond=shape_ok,
            odometer_match=odo_ok,
            wall_ms=(time.perf_counter() - started) * 1e3)
