"""The layered square lattice, its diamond subgraphs, and exact odometers.

The layered square lattice is the square grid with every directed edge that
runs along the x- or y-axis toward the origin reflected to point away from
it, so axis vertices carry a doubled outward edge and the origin has no
incoming edges.  Out-edges are ordered: writing ``R`` for the clockwise
quarter turn ``(x, y) -> (y, -x)``, every site z != o decomposes uniquely as
z = R^j w with w = (x, y) in the quadrant Q = {x >= 0, y > 0}, and slot i of
z's out-edge list points along R^(i+j) * north -- except that slot 2 of an
axis site (x = 0 in its quadrant frame) points along R^j * north, producing
the doubled outward edge.  The origin's slots point north, east, south, west.

``D_n`` denotes the diamond {|x| + |y| <= n} and ``L_m`` the layer
{|x| + |y| = m}.  The diamond graph of radius n is the induced subgraph on
D_n with the outermost layer L_n as sinks.

The rotation convention matters: the quarter turn is applied clockwise
(north -> east).  Under the mirror convention the cluster still grows as a
diamond but the closed-form odometer below no longer matches the dynamics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .engine import DirectedMultigraph

# Slot directions in the quadrant frame: clockwise quarter turns of north.
DIRECTIONS = np.array([(0, 1), (1, 0), (0, -1), (-1, 0)], dtype=np.int64)

ORIGIN = (0, 0)


def rotate_cw(z: tuple[int, int], quarter_turns: int = 1) -> tuple[int, int]:
    """Rotate a lattice point clockwise by the given number of quarter turns."""
    x, y = z
    for _ in range(quarter_turns % 4):
        x, y = y, -x
    return (x, y)


def quadrant_decompose(z: tuple[int, int]) -> tuple[int, tuple[int, int]]:
    """Unique (j, w) with w in Q = {x >= 0, y > 0} and z = R^j w.

    The origin belongs to no quadrant and is rejected.
    """
    if z == ORIGIN:
        raise ValueError("the origin has no quadrant decomposition")
    for j in range(4):
        w = rotate_cw(z, (4 - j) % 4)
        if w[0] >= 0 and w[1] > 0:
            return j, w
    raise AssertionError("unreachable: quadrant images cover the plane")


def edge_targets(z: tuple[int, int]) -> tuple[tuple[int, int], ...]:
    """Ordered 4-tuple of out-neighbor points of z on the full lattice."""
    x, y = z
    if z == ORIGIN:
        dirs = range(4)
    else:
        j, w = quadrant_decompose(z)
        dirs = [j if (i == 2 and w[0] == 0) else (i + j) % 4 for i in range(4)]
    return tuple((x + int(DIRECTIONS[d][0]), y + int(DIRECTIONS[d][1]))
                 for d in dirs)


def ell(z: tuple[int, int], n: int) -> int:
    """Depth n - |x| - |y| of z inside the diamond D_n."""
    depth = n - abs(z[0]) - abs(z[1])
    if depth < 0:
        raise ValueError(f"{z} lies outside the diamond of radius {n}")
    return depth


def in_exceptional_set(z: tuple[int, int], n: int) -> bool:
    """Membership of z in the set C of sites fired one time fewer.

    C collects, over all four quadrant copies, the off-axis sites whose
    depth is 3 mod 4, together with those of depth 2 mod 4 at height >= 2
    in their quadrant frame.
    """
    depth = ell(z, n)
    if depth < 1:
        raise ValueError(f"{z} lies outside the interior diamond of radius {n - 1}")
    if z == ORIGIN:
        return False
    _, w = quadrant_decompose(z)
    if w[0] <= 0:
        return False
    return depth % 4 == 3 or (depth % 4 == 2 and w[1] >= 2)


def _quadrant_index(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Exponent j of the quadrant copy R^j Q holding each site; origin gets 0."""
    j = np.zeros(np.shape(x), dtype=np.int64)
    j[(x > 0) & (y <= 0)] = 1
    j[(x <= 0) & (y < 0)] = 2
    j[(x < 0) & (y >= 0)] = 3
    return j


def _direction_slots(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Direction index (0=N, 1=E, 2=S, 3=W) of each of the 4 slots per site."""
    j = _quadrant_index(x, y)
    slots = (np.arange(4, dtype=np.int64) + j[:, None]) % 4
    on_axis = ((x == 0) ^ (y == 0))
    slots[on_axis, 2] = j[on_axis]
    return slots


@dataclass(frozen=True, eq=False)
class DiamondGraph:
    """Induced diamond subgraph: vertex set D_n, sinks L_n, radius n."""

    n: int
    graph: DirectedMultigraph
    coords: np.ndarray       # (V, 2) lattice point per vertex id
    vertex_ids: np.ndarray   # (2n+1)^2 box lookup, -1 outside D_n

    def vertex(self, x: int, y: int) -> int:
        n = self.n
        if abs(x) + abs(y) > n:
            raise ValueError(f"({x}, {y}) lies outside the diamond of radius {n}")
        return int(self.vertex_ids[(x + n) * (2 * n + 1) + (y + n)])

    @property
    def origin(self) -> int:
        return self.vertex(0, 0)

    @property
    def num_vertices(self) -> int:
        return self.coords.shape[0]


def build_diamond_graph(n: int) -> DiamondGraph:
    """Diamond graph of radius n: every interior site carries its ordered
    out-edge 4-tuple; sites of the outermost layer are edgeless sinks."""
    if n < 1:
        raise ValueError("radius must be at least 1")
    side = 2 * n + 1
    axis = np.arange(-n, n + 1, dtype=np.int64)
    X, Y = np.meshgrid(axis, axis, indexing="ij")
    X, Y = X.ravel(), Y.ravel()
    ell1 = np.abs(X) + np.abs(Y)

    inside = ell1 <= n
    vertex_ids = np.full(side * side, -1, dtype=np.int64)
    vertex_ids[inside] = np.arange(int(inside.sum()))
    coords = np.stack([X[inside], Y[inside]], axis=1)
    is_sink = ell1[inside] == n

    interior = ell1 <= n - 1
    ix, iy = X[interior], Y[interior]
    steps = DIRECTIONS[_direction_slots(ix, iy)]          # (K, 4, 2)
    tx = ix[:, None] + steps[:, :, 0]
    ty = iy[:, None] + steps[:, :, 1]
    target_ids = vertex_ids[(tx + n) * side + (ty + n)]

    degrees = np.where(is_sink, 0, 4)
    offsets = np.zeros(coords.shape[0] + 1, dtype=np.int64)
    np.cumsum(degrees, out=offsets[1:])
    graph = DirectedMultigraph(out_offsets=offsets,
                               out_targets=target_ids.ravel().astype(np.int64),
                               is_sink=is_sink)
    graph.validate()
    return DiamondGraph(n=n, graph=graph, coords=coords, vertex_ids=vertex_ids)


def initial_rotors(dg: DiamondGraph) -> np.ndarray:
    """The distinguished starting rotors: slot 0 everywhere, i.e. every
    rotor in a quadrant points away from the origin's layer ("north" in the
    quadrant frame), matching across quadrants by rotational symmetry."""
    return np.zeros(dg.num_vertices, dtype=np.int64)


def depth_values(dg: DiamondGraph) -> np.ndarray:
    """Depth n - |x| - |y| of every vertex."""
    return dg.n - np.abs(dg.coords).sum(axis=1)


def quadrant_frame(x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Quadrant-frame coordinates (w_x, w_y) of each site; origin gets (0, 0)."""
    j = _quadrant_index(x, y)
    w_x = np.choose(j, [x, -y, -x, y])
    w_y = np.choose(j, [y, x, -y, -x])
    return w_x, w_y


def exceptional_mask_values(n: int, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Membership in the correction set C for arbitrary coordinate arrays."""
    depth = n - np.abs(x) - np.abs(y)
    w_x, w_y = quadrant_frame(x, y)
    res = depth % 4
    return (depth >= 1) & (w_x > 0) & ((res == 3) | ((res == 2) & (w_y >= 2)))


def base_odometer_values(n: int, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Uncorrected fire counts: 2n(n+1) at the origin, depth*(depth+1) on
    the rest of the interior of D_n, zero outside."""
    depth = n - np.abs(x) - np.abs(y)
    u = np.where(depth >= 1, depth * (depth + 1), 0).astype(np.int64)
    u[(x == 0) & (y == 0)] = 2 * n * (n + 1)
    return u


def odometer_values(n: int, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Exact fire counts of the aggregation of 2n(n+1)+1 chips, evaluated
    on arbitrary coordinate arrays (zero outside the interior of D_n)."""
    return base_odometer_values(n, x, y) - exceptional_mask_values(n, x, y)


def exceptional_set_mask(dg: DiamondGraph) -> np.ndarray:
    """Boolean mask of the correction set C over the vertices of D_n."""
    return exceptional_mask_values(dg.n, dg.coords[:, 0], dg.coords[:, 1])


def base_odometer(dg: DiamondGraph) -> np.ndarray:
    """Uncorrected fire counts over the vertices of D_n."""
    return base_odometer_values(dg.n, dg.coords[:, 0], dg.coords[:, 1])


def odometer_formula(dg: DiamondGraph) -> np.ndarray:
    """Exact fire counts of the aggregation of 2n(n+1)+1 chips: the base
    counts minus one on the correction set C."""
    return odometer_values(dg.n, dg.coords[:, 0], dg.coords[:, 1])


def predicted_final_rotors(dg: DiamondGraph) -> np.ndarray:
    """Rotor slots after the aggregation: slot 0 advanced once per fire."""
    return odometer_formula(dg) % 4


@dataclass(frozen=True, eq=False)
class LatticeWindow:
    """Dense working region [-radius, radius]^2 in flat x-major indexing.

    ``targets[s, i]`` is the flat index reached along slot i from site s,
    or -1 where the step would leave the window.  Sites are lattice sites of
    the full layered lattice; no sink structure is imposed here.
    """

    radius: int
    targets: np.ndarray  # (side*side, 4) int32
    ell1: np.ndarray     # (side*side,) int32
    origin: int

    @property
    def side(self) -> int:
        return 2 * self.radius + 1

    def site(self, x: int, y: int) -> int:
        r = self.radius
        if abs(x) > r or abs(y) > r:
            raise ValueError(f"({x}, {y}) outside window of radius {r}")
        return (x + r) * self.side + (y + r)

    def coords(self) -> tuple[np.ndarray, np.ndarray]:
        axis = np.arange(-self.radius, self.radius + 1, dtype=np.int64)
        X, Y = np.meshgrid(axis, axis, indexing="ij")
        return X.ravel(), Y.ravel()


def build_window(radius: int) -> LatticeWindow:
    if radius < 1:
        raise ValueError("radius must be at least 1")
    side = 2 * radius + 1
    axis = np.arange(-radius, radius + 1, dtype=np.int64)
    X, Y = np.meshgrid(axis, axis, indexing="ij")
    X, Y = X.ravel(), Y.ravel()
    steps = DIRECTIONS[_direction_slots(X, Y)]
    tx = X[:, None] + steps[:, :, 0]
    ty = Y[:, None] + steps[:, :, 1]
    good = (np.abs(tx) <= radius) & (np.abs(ty) <= radius)
    flat = (tx + radius) * side + (ty + radius)
    targets = np.where(good, flat, -1).astype(np.int32)
    ell1 = (np.abs(X) + np.abs(Y)).astype(np.int32)
    return LatticeWindow(radius=radius, targets=targets, ell1=ell1,
                         origin=(radius * side + radius))
