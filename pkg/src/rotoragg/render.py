"""PPM rendering of final rotor directions over the cluster.

One pixel per lattice site of the bounding box [-n, n]^2, colored by the
geometric direction of the site's current rotor edge: red = north,
blue = east, gray = south, black = west.  Unoccupied sites are white.
Axis sites are colored by where their rotor edge actually points, so the
doubled outward slots both map to the same color.  Rows run top-down with
y = +n on row 0.
"""

from __future__ import annotations

import numpy as np

from .aggregation import AggregationState

COLOR_NORTH = (255, 0, 0)
COLOR_EAST = (0, 0, 255)
COLOR_SOUTH = (128, 128, 128)
COLOR_WEST = (0, 0, 0)
COLOR_BACKGROUND = (255, 255, 255)

_DIRECTION_COLORS = np.array(
    [COLOR_NORTH, COLOR_EAST, COLOR_SOUTH, COLOR_WEST], dtype=np.uint8)


def render_cluster(state: AggregationState, n: int) -> np.ndarray:
    """(2n+1, 2n+1, 3) uint8 image of the occupied sites within |x|+|y|-box
    coordinates [-n, n]^2, colored by final rotor direction."""
    window = state.window
    if n > window.radius:
        raise ValueError("bounding box exceeds the working window")
    side = 2 * n + 1
    image = np.full((side, side, 3), 255, dtype=np.uint8)

    x, y = window.coords()
    in_box = (np.abs(x) <= n) & (np.abs(y) <= n)
    sites = np.flatnonzero(in_box & state.occupied)
    pointed = window.targets[sites, state.rotors[sites]]
    if (pointed < 0).any():
        raise ValueError("occupied site's rotor leaves the working window")
    dx = x[pointed] - x[sites]
    dy = y[pointed] - y[sites]
    direction = np.where(dy == 1, 0,
                         np.where(dx == 1, 1, np.where(dy == -1, 2, 3)))
    rows = n - y[sites]
    cols = x[sites] + n
    image[rows, cols] = _DIRECTION_COLORS[direction]
    return image


def ppm_bytes(image: np.ndarray) -> bytes:
    """Binary (P6) encoding with max value 255."""
    height, width, depth = image.shape
    if depth != 3 or image.dtype != np.uint8:
        raise ValueError("expected an (h, w, 3) uint8 image")
    header = f"P6\n{width} {height}\n255\n".encode("ascii")
    return header + image.tobytes()


def read_ppm(data: bytes) -> np.ndarray:
    """Inverse of :func:`ppm_bytes` for the exact header shape it writes."""
    magic, dims, maxval, raw = data.split(b"\n", 3)
    if magic != b"P6" or maxval != b"255":
        raise ValueError("unsupported PPM flavor")
    width, height = (int(t) for t in dims.split())
    return np.frombuffer(raw, dtype=np.uint8).reshape(height, width, 3)
