"""Chip-firing algebra for rotor-router walks on finite directed multigraphs.

A graph is stored in compressed sparse row form: the ordered out-edges of
vertex ``v`` occupy slots ``out_offsets[v]:out_offsets[v+1]`` of
``out_targets``.  Slot order is fixed at construction; parallel edges and
loops are allowed.  A nonempty set of sink vertices never fires and only
receives chips.

State is carried by plain integer arrays indexed by vertex:

* rotor configuration -- current slot index per vertex, pinned to 0 at sinks;
* chip configuration  -- signed chip count per vertex (negative = hole);
* firing vector       -- nonnegative fire count per vertex, 0 at sinks.

Firing a vertex first advances its rotor one slot cyclically, then sends a
single chip along the new rotor edge.  No chip needs to be present: firing
an empty vertex digs a hole.  Legality is a property of call sites, not of
the operators here.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np


class NonTermination(RuntimeError):
    """An iteration guard tripped before the operation finished."""


class CyclePoppingCapExceeded(NonTermination):
    """Cycle popping hit its pop cap without reaching an acyclic state."""


class WalkCapExceeded(NonTermination):
    """A rotor walk exceeded its step cap without reaching a stop vertex."""


class SearchSpaceTooLarge(ValueError):
    """A brute-force enumeration would exceed its configured size limit."""


@dataclass(frozen=True, eq=False)
class DirectedMultigraph:
    """Finite directed multigraph with ordered out-edges and sink vertices."""

    out_offsets: np.ndarray  # (V+1,) int64
    out_targets: np.ndarray  # (E,)   int64, slot-ordered within each vertex
    is_sink: np.ndarray      # (V,)   bool

    @classmethod
    def from_out_edges(cls, out_edges: Sequence[Sequence[int]],
                       sinks: Iterable[int]) -> "DirectedMultigraph":
        """Build and validate a graph from per-vertex ordered target lists."""
        num_vertices = len(out_edges)
        is_sink = np.zeros(num_vertices, dtype=bool)
        for s in sinks:
            if not 0 <= s < num_vertices:
                raise ValueError(f"sink {s} out of range")
            is_sink[s] = True
        offsets = np.zeros(num_vertices + 1, dtype=np.int64)
        for v, targets in enumerate(out_edges):
            offsets[v + 1] = offsets[v] + len(targets)
        targets = np.fromiter(
            (t for lst in out_edges for t in lst), dtype=np.int64,
            count=int(offsets[-1]))
        graph = cls(out_offsets=offsets, out_targets=targets, is_sink=is_sink)
        graph.validate()
        return graph

    def validate(self) -> None:
        if not self.is_sink.any():
            raise ValueError("sink set must be nonempty")
        if self.num_edges and not (
                (self.out_targets >= 0).all()
                and (self.out_targets < self.num_vertices).all()):
            raise ValueError("edge target out of range")
        deg = self.out_degree
        if (deg[~self.is_sink] < 1).any():
            raise ValueError("every non-sink vertex needs at least one out-edge")
        for arr in (self.out_offsets, self.out_targets, self.is_sink):
            arr.setflags(write=False)

    @property
    def num_vertices(self) -> int:
        return self.is_sink.size

    @property
    def num_edges(self) -> int:
        return self.out_targets.size

    @property
    def out_degree(self) -> np.ndarray:
        return np.diff(self.out_offsets)

    @property
    def non_sinks(self) -> np.ndarray:
        return np.flatnonzero(~self.is_sink)

    def degree(self, v: int) -> int:
        return int(self.out_offsets[v + 1] - self.out_offsets[v])

    def target(self, v: int, slot: int) -> int:
        """Target vertex of the edge in the given slot of v's out-edge list."""
        return int(self.out_targets[self.out_offsets[v] + slot])


def uniform_rotors(graph: DirectedMultigraph, slot: int = 0) -> np.ndarray:
    """Rotor configuration with every non-sink rotor at the same slot index."""
    rho = np.zeros(graph.num_vertices, dtype=np.int64)
    nonsinks = graph.non_sinks
    if slot:
        rho[nonsinks] = np.asarray(slot) % graph.out_degree[nonsinks]
    return rho


def zero_chips(graph: DirectedMultigraph) -> np.ndarray:
    return np.zeros(graph.num_vertices, dtype=np.int64)


def zero_firing_vector(graph: DirectedMultigraph) -> np.ndarray:
    return np.zeros(graph.num_vertices, dtype=np.int64)


def validate_rotors(graph: DirectedMultigraph, rho: np.ndarray) -> None:
    nonsinks = graph.non_sinks
    deg = graph.out_degree
    if rho.shape != (graph.num_vertices,):
        raise ValueError("rotor array has wrong shape")
    if ((rho[nonsinks] < 0) | (rho[nonsinks] >= deg[nonsinks])).any():
        raise ValueError("rotor index out of range")


def _check_can_fire(graph: DirectedMultigraph, v: int) -> None:
    if not 0 <= v < graph.num_vertices:
        raise ValueError(f"vertex {v} out of range")
    if graph.is_sink[v]:
        raise ValueError(f"vertex {v} is a sink and cannot fire")


def fire(graph: DirectedMultigraph, rho: np.ndarray, sigma: np.ndarray,
         v: int) -> tuple[np.ndarray, np.ndarray]:
    """Fire v: advance its rotor one slot, send one chip along the new rotor.

    The chip count at v may be zero or negative; firing then deepens a hole.
    """
    _check_can_fire(graph, v)
    rho2, sigma2 = rho.copy(), sigma.copy()
    slot = (int(rho[v]) + 1) % graph.degree(v)
    rho2[v] = slot
    sigma2[v] -= 1
    sigma2[graph.target(v, slot)] += 1
    return rho2, sigma2


def unfire(graph: DirectedMultigraph, rho: np.ndarray, sigma: np.ndarray,
           v: int) -> tuple[np.ndarray, np.ndarray]:
    """Exact inverse of :func:`fire`: retract the chip, step the rotor back."""
    _check_can_fire(graph, v)
    rho2, sigma2 = rho.copy(), sigma.copy()
    sigma2[graph.target(v, int(rho[v]))] -= 1
    sigma2[v] += 1
    rho2[v] = (int(rho[v]) - 1) % graph.degree(v)
    return rho2, sigma2


def _validate_firing_vector(graph: DirectedMultigraph, u: np.ndarray) -> None:
    if u.shape != (graph.num_vertices,):
        raise ValueError("firing vector has wrong shape")
    if (u < 0).any():
        raise ValueError("firing counts must be nonnegative")
    if u[graph.is_sink].any():
        raise ValueError("firing counts must be zero at sinks")


def edge_flows(graph: DirectedMultigraph, rho: np.ndarray,
               u: np.ndarray) -> np.ndarray:
    """Chips sent along each edge slot when every v fires u(v) times from rho.

    Closed form: u(v) // d_v chips traverse every slot of v, and one extra
    traverses each of the u(v) % d_v slots following the initial rotor.
    """
    validate_rotors(graph, rho)
    _validate_firing_vector(graph, u)
    deg = graph.out_degree
    deg_safe = np.maximum(deg, 1)
    full, rem = np.divmod(u, deg_safe)
    flows = np.repeat(full, deg)
    slot = np.arange(graph.num_edges, dtype=np.int64) - np.repeat(
        graph.out_offsets[:-1], deg)
    flows += ((slot - np.repeat(rho, deg) - 1) % np.repeat(deg_safe, deg)
              < np.repeat(rem, deg))
    return flows


def apply_firing_vector(graph: DirectedMultigraph, rho: np.ndarray,
                        sigma: np.ndarray,
                        u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Fire every vertex v exactly u(v) times (order immaterial).

    Chip movements are computed in closed form per vertex, not by replaying
    single steps, so the cost is O(edges) regardless of the counts in u.
    """
    flows = edge_flows(graph, rho, u)
    sigma2 = sigma.astype(np.int64) - u
    np.add.at(sigma2, graph.out_targets, flows)
    rho2 = rho.copy()
    nonsinks = graph.non_sinks
    rho2[nonsinks] = (rho[nonsinks] + u[nonsinks]) % graph.out_degree[nonsinks]
    return rho2, sigma2


def replay_firing_vector(graph: DirectedMultigraph, rho: np.ndarray,
                         sigma: np.ndarray,
                         u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Reference implementation of :func:`apply_firing_vector` by u(v) single
    fires per vertex.  Quadratically slower; kept as an independent oracle."""
    _validate_firing_vector(graph, u)
    rho2, sigma2 = rho.copy(), sigma.copy()
    for v in graph.non_sinks:
        d = graph.degree(v)
        slot = int(rho2[v])
        for _ in range(int(u[v])):
            slot = (slot + 1) % d
            sigma2[v] -= 1
            sigma2[graph.target(v, slot)] += 1
        rho2[v] = slot
    return rho2, sigma2


def rotor_successors(graph: DirectedMultigraph, rho: np.ndarray) -> np.ndarray:
    """Vertex each rotor currently points to; sinks map to themselves."""
    succ = np.arange(graph.num_vertices, dtype=np.int64)
    nonsinks = graph.non_sinks
    succ[nonsinks] = graph.out_targets[graph.out_offsets[nonsinks]
                                       + rho[nonsinks]]
    return succ


def is_acyclic(graph: DirectedMultigraph, rho: np.ndarray) -> bool:
    """True iff the rotor subgraph has no directed cycle.

    Equivalently: following rotors from any vertex reaches a sink.  Checked
    by pointer doubling, so large lattice instances stay cheap.
    """
    succ = rotor_successors(graph, rho)
    hops = 1
    while hops < graph.num_vertices:
        succ = succ[succ]
        hops *= 2
    return bool(graph.is_sink[succ].all())


def pop_cycles(graph: DirectedMultigraph, rho: np.ndarray, sigma: np.ndarray,
               max_pops: Optional[int] = None
               ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Unfire every vertex of each directed rotor cycle once, repeatedly,
    until the rotor configuration is acyclic.

    Cycles are located by walking rotors from the lowest-indexed unvisited
    vertex.  Popping a cycle moves no net chips, so the returned chip
    configuration equals the input.  Returns (rotors, chips, pop counts).

    Termination is not guaranteed for arbitrary inputs; after ``max_pops``
    pops (default ``|V'| * max_degree``) a :class:`CyclePoppingCapExceeded`
    diagnostic is raised.
    """
    validate_rotors(graph, rho)
    rho2, sigma2 = rho.copy(), sigma.copy()
    pops = zero_firing_vector(graph)
    deg = graph.out_degree
    if max_pops is None:
        nonsink_count = int((~graph.is_sink).sum())
        max_pops = nonsink_count * int(deg.max(initial=1))
    offsets = graph.out_offsets
    targets = graph.out_targets
    is_sink = graph.is_sink

    color = np.zeros(graph.num_vertices, dtype=np.int8)  # 0 new, 1 path, 2 done
    path_pos = np.zeros(graph.num_vertices, dtype=np.int64)
    popped = 0
    for start in range(graph.num_vertices):
        if color[start] != 0 or is_sink[start]:
            continue
        path: list[int] = []
        v = start
        while True:
            if is_sink[v] or color[v] == 2:
                for w in path:
                    color[w] = 2
                break
            if color[v] == 1:
                # Found a cycle: unfire each vertex on it once.
                cut = int(path_pos[v])
                cycle = path[cut:]
                for w in cycle:
                    slot = int(rho2[w])
                    sigma2[targets[offsets[w] + slot]] -= 1
                    sigma2[w] += 1
                    rho2[w] = (slot - 1) % int(deg[w])
                    pops[w] += 1
                    color[w] = 0
                del path[cut:]
                popped += 1
                if popped > max_pops:
                    raise CyclePoppingCapExceeded(
                        f"exceeded {max_pops} cycle pops without reaching an "
                        f"acyclic rotor configuration")
                # Resume from the vertex that led into the cycle.
                if path:
                    v = int(targets[offsets[path[-1]] + rho2[path[-1]]])
                else:
                    v = start
                continue
            color[v] = 1
            path_pos[v] = len(path)
            path.append(v)
            v = int(targets[offsets[v] + rho2[v]])
    return rho2, sigma2, pops


def _default_walk_cap(graph: DirectedMultigraph) -> int:
    d_max = int(graph.out_degree.max(initial=1))
    n = graph.num_vertices
    return 16 * n * d_max * (1 + n)


def rotor_walk(graph: DirectedMultigraph, rho: np.ndarray, start: int,
               stop: Iterable[int] | np.ndarray,
               max_steps: Optional[int] = None
               ) -> tuple[int, np.ndarray, np.ndarray]:
    """Walk a single chip from ``start`` until it first occupies a vertex of
    ``stop``; each step fires the chip's current location.

    Returns (end vertex, updated rotors, per-vertex step counts).  Raises
    :class:`WalkCapExceeded` if no stop vertex is reached within the step cap,
    which only happens on malformed graphs where stop is unreachable.
    """
    if isinstance(stop, np.ndarray) and stop.dtype == bool:
        stop_mask = stop
    else:
        stop_mask = np.zeros(graph.num_vertices, dtype=bool)
        stop_mask[np.fromiter(stop, dtype=np.int64)] = True
    if stop_mask[start]:
        raise ValueError("walk must start outside the stop set")
    validate_rotors(graph, rho)
    if max_steps is None:
        max_steps = _default_walk_cap(graph)

    rho2 = rho.copy()
    odometer = zero_firing_vector(graph)
    offsets, targets, deg = graph.out_offsets, graph.out_targets, graph.out_degree
    pos = start
    for _ in range(max_steps):
        if graph.is_sink[pos]:
            raise ValueError(f"walk reached non-stop sink {pos} which cannot fire")
        slot = (int(rho2[pos]) + 1) % int(deg[pos])
        rho2[pos] = slot
        odometer[pos] += 1
        pos = int(targets[offsets[pos] + slot])
        if stop_mask[pos]:
            return pos, rho2, odometer
    raise WalkCapExceeded(
        f"no stop vertex reached within {max_steps} steps from {start}")


def stabilize_legal(graph: DirectedMultigraph, rho: np.ndarray,
                    sigma: np.ndarray, order: str = "fifo",
                    max_fires: Optional[int] = None
                    ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Fire only vertices holding chips until no non-sink holds any.

    Requires sigma >= 0 on non-sinks; never digs a hole.  By the abelian
    property the resulting odometer is independent of the firing order; the
    ``order`` argument ("fifo" or "lifo") only changes the work-queue
    discipline and exists so tests can confirm that independence.
    """
    nonsinks = graph.non_sinks
    if (sigma[nonsinks] < 0).any():
        raise ValueError("legal stabilization requires sigma >= 0 off the sinks")
    if order not in ("fifo", "lifo"):
        raise ValueError(f"unknown queue order {order!r}")
    validate_rotors(graph, rho)
    if max_fires is None:
        total = int(np.maximum(sigma, 1).sum())
        max_fires = 16 * graph.num_vertices * int(
            graph.out_degree.max(initial=1)) * (1 + total)

    rho2, sigma2 = rho.copy(), sigma.copy()
    u = zero_firing_vector(graph)
    offsets, targets, deg = graph.out_offsets, graph.out_targets, graph.out_degree
    is_sink = graph.is_sink
    queue = deque(int(v) for v in nonsinks if sigma2[v] > 0)
    queued = np.zeros(graph.num_vertices, dtype=bool)
    queued[[v for v in queue]] = True
    fires = 0
    while queue:
        v = queue.popleft() if order == "fifo" else queue.pop()
        queued[v] = False
        if sigma2[v] <= 0:
            continue
        while sigma2[v] > 0:
            slot = (int(rho2[v]) + 1) % int(deg[v])
            rho2[v] = slot
            sigma2[v] -= 1
            u[v] += 1
            t = int(targets[offsets[v] + slot])
            sigma2[t] += 1
            fires += 1
            if fires > max_fires:
                raise NonTermination(
                    f"stabilization exceeded {max_fires} fires; "
                    f"are the sinks reachable?")
            if not is_sink[t] and t != v and sigma2[t] > 0 and not queued[t]:
                queue.append(t)
                queued[t] = True
    return rho2, sigma2, u


# ---------------------------------------------------------------------------
# Brute-force strong-abelian-property oracle
# ---------------------------------------------------------------------------

@dataclass
class SapCertificate:
    """Outcome of the brute-force uniqueness check over all firing vectors
    with entries <= bound, plus the two related enumeration audits."""

    passed: bool
    num_vectors: int
    num_acyclic: int
    counterexample: Optional[tuple[np.ndarray, np.ndarray]]
    must_cycle_ok: Optional[bool] = None
    must_cycle_witness: Optional[np.ndarray] = None
    monotone_ok: Optional[bool] = None
    monotone_witness: Optional[tuple[np.ndarray, np.ndarray]] = None
    monotone_pairs: int = 0
    monotone_exhaustive: bool = False


def _arrival_table(graph: DirectedMultigraph, rho: np.ndarray, v: int,
                   bound: int) -> np.ndarray:
    """table[k] = chips delivered to each vertex by firing v k times."""
    table = np.zeros((bound + 1, graph.num_vertices), dtype=np.int64)
    d = graph.degree(v)
    slot = int(rho[v])
    row = np.zeros(graph.num_vertices, dtype=np.int64)
    for k in range(1, bound + 1):
        slot = (slot + 1) % d
        row[graph.target(v, slot)] += 1
        table[k] = row
    return table


def _combo_acyclic(graph: DirectedMultigraph, nonsinks: np.ndarray,
                   slots: np.ndarray) -> bool:
    rho = np.zeros(graph.num_vertices, dtype=np.int64)
    rho[nonsinks] = slots
    return is_acyclic(graph, rho)


def enumerate_firing_vectors(graph: DirectedMultigraph, rho: np.ndarray,
                             sigma: np.ndarray, bound: int,
                             max_vectors: int = 500_000
                             ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All firing vectors with entries in [0, bound] and their outcomes.

    Returns (U, sigma_out, acyclic) where row i of U is a firing vector over
    the non-sinks, sigma_out[i] is the resulting chip configuration over all
    vertices, and acyclic[i] says whether the resulting rotors are acyclic.
    """
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    validate_rotors(graph, rho)
    nonsinks = graph.non_sinks
    nv = nonsinks.size
    base = bound + 1
    n_vec = base ** nv
    if n_vec > max_vectors:
        raise SearchSpaceTooLarge(
            f"{n_vec} firing vectors exceed the limit of {max_vectors}")

    counts = np.arange(n_vec, dtype=np.int64)
    U = (counts[:, None] // base ** np.arange(nv, dtype=np.int64)) % base

    sigma_out = np.tile(sigma.astype(np.int64), (n_vec, 1))
    for i, v in enumerate(nonsinks):
        sigma_out += _arrival_table(graph, rho, int(v), bound)[U[:, i]]
        sigma_out[:, v] -= U[:, i]

    deg = graph.out_degree[nonsinks]
    final_slots = (rho[nonsinks] + U) % deg if nv else U
    strides = np.ones(nv, dtype=np.int64)
    if nv > 1:
        strides[1:] = np.cumprod(deg[:-1])
    combo_ids = final_slots @ strides
    acyclic = np.zeros(n_vec, dtype=bool)
    for cid in np.unique(combo_ids):
        slots = (cid // strides) % deg
        acyclic[combo_ids == cid] = _combo_acyclic(graph, nonsinks, slots)
    return U, sigma_out, acyclic


def _expand_u(graph: DirectedMultigraph, row: np.ndarray) -> np.ndarray:
    u = zero_firing_vector(graph)
    u[graph.non_sinks] = row
    return u


def sap_bruteforce_oracle(graph: DirectedMultigraph, rho: np.ndarray,
                          sigma: np.ndarray, bound: int, *,
                          acyclic_filter: bool = True,
                          run_audits: bool = True,
                          max_vectors: int = 500_000,
                          exhaustive_pair_limit: int = 1500,
                          sample_pairs: int = 100_000,
                          rng: Optional[np.random.Generator] = None
                          ) -> SapCertificate:
    """Exhaustively check odometer uniqueness on a small graph.

    Enumerates every firing vector u with entries <= bound, applies it to
    (rho, sigma), and asserts that among outcomes with acyclic rotors and
    identical chips on the non-sinks the firing vector is unique.  Passing
    ``acyclic_filter=False`` drops the acyclicity hypothesis, which is
    expected to surface collisions and demonstrates the hypothesis matters.

    With ``run_audits`` the same enumeration is also audited for the two
    supporting facts: a nonzero u never reproduces the starting chips with
    acyclic rotors, and whenever rotors(u1) are acyclic with chips(u2) <=
    chips(u1) off the sinks, u1 <= u2 pointwise.  The pairwise audit is
    exhaustive up to ``exhaustive_pair_limit`` enumerated vectors and falls
    back to ``sample_pairs`` seeded random pairs beyond that.
    """
    U, sigma_out, acyclic = enumerate_firing_vectors(
        graph, rho, sigma, bound, max_vectors=max_vectors)
    nonsinks = graph.non_sinks
    sig_v = sigma_out[:, nonsinks]
    n_vec = U.shape[0]

    mask = acyclic if acyclic_filter else np.ones(n_vec, dtype=bool)
    rows = sig_v[mask]
    idx = np.flatnonzero(mask)
    passed, counterexample = True, None
    if rows.shape[0] > 1:
        _, inverse, counts = np.unique(
            rows, axis=0, return_inverse=True, return_counts=True)
        dup = np.flatnonzero(counts[inverse] > 1)
        if dup.size:
            group = inverse[dup[0]]
            pair = idx[np.flatnonzero(inverse == group)[:2]]
            passed = False
            counterexample = (_expand_u(graph, U[pair[0]]),
                              _expand_u(graph, U[pair[1]]))

    cert = SapCertificate(
        passed=passed, num_vectors=n_vec, num_acyclic=int(acyclic.sum()),
        counterexample=counterexample)
    if not run_audits:
        return cert

    # Nonzero u with unchanged chips off the sinks and acyclic rotors: never.
    unchanged = (sig_v == sigma[nonsinks]).all(axis=1)
    bad = acyclic & unchanged & U.any(axis=1)
    cert.must_cycle_ok = not bad.any()
    if bad.any():
        cert.must_cycle_witness = _expand_u(graph, U[np.flatnonzero(bad)[0]])

    # Pairwise monotonicity audit.
    cert.monotone_ok = True
    acyclic_idx = np.flatnonzero(acyclic)
    if n_vec <= exhaustive_pair_limit:
        cert.monotone_exhaustive = True
        for start in range(0, acyclic_idx.size, 256):
            chunk = acyclic_idx[start:start + 256]
            dominated = (sig_v[None, :, :] <= sig_v[chunk][:, None, :]).all(-1)
            exceeds = (U[chunk][:, None, :] > U[None, :, :]).any(-1)
            viol = dominated & exceeds
            cert.monotone_pairs += int(dominated.sum())
            if viol.any():
                i, j = np.argwhere(viol)[0]
                cert.monotone_ok = False
                cert.monotone_witness = (_expand_u(graph, U[chunk[i]]),
                                         _expand_u(graph, U[j]))
                break
    elif acyclic_idx.size:
        gen = rng if rng is not None else np.random.default_rng(0)
        i = acyclic_idx[gen.integers(0, acyclic_idx.size, size=sample_pairs)]
        j = gen.integers(0, n_vec, size=sample_pairs)
        dominated = (sig_v[j] <= sig_v[i]).all(-1)
        exceeds = (U[i] > U[j]).any(-1)
        viol = dominated & exceeds
        cert.monotone_pairs = int(dominated.sum())
        if viol.any():
            k = int(np.flatnonzero(viol)[0])
            cert.monotone_ok = False
            cert.monotone_witness = (_expand_u(graph, U[i[k]]),
                                     _expand_u(graph, U[j[k]]))
    return cert


def random_multigraph(rng: np.random.Generator, max_vertices: int = 6,
                      max_degree: int = 3, min_vertices: int = 2,
                      chip_low: int = -2, chip_high: int = 3
                      ) -> tuple[DirectedMultigraph, np.ndarray, np.ndarray]:
    """Seeded random instance (graph, rotors, chips) for oracle sweeps.

    Vertices are split into at least one sink and at least one non-sink;
    each non-sink gets 1..max_degree out-edges with uniform random targets
    (loops and parallel edges allowed).
    """
    n = int(rng.integers(min_vertices, max_vertices + 1))
    n_sinks = int(rng.integers(1, n))
    sinks = rng.permutation(n)[:n_sinks]
    sink_set = set(int(s) for s in sinks)
    out_edges: list[list[int]] = []
    for v in range(n):
        if v in sink_set:
            out_edges.append([])
        else:
            d = int(rng.integers(1, max_degree + 1))
            out_edges.append([int(t) for t in rng.integers(0, n, size=d)])
    graph = DirectedMultigraph.from_out_edges(out_edges, sink_set)
    rho = zero_chips(graph)
    for v in graph.non_sinks:
        rho[v] = int(rng.integers(0, graph.degree(int(v))))
    sigma = rng.integers(chip_low, chip_high + 1,
                         size=n).astype(np.int64)
    return graph, rho, sigma
