"""Small reference maps used as regression anchors: the cube with its planar
rotation system (and the variant with one vertex reversed), and the theta
graph (two vertices joined by a triple edge) in both relative orientations.
"""

from importlib import resources

import numpy as np

from .config_model import DartPairing
from .rotation_map import CombinatorialMap, RotationSystem, flip_vertex

# planar counterclockwise neighbor order of the cube skeleton:
# outer square 0-1-2-3, inner square 4-5-6-7, spokes i -- i+4
_CUBE_NEIGHBORS = [
    [1, 4, 3],
    [2, 5, 0],
    [3, 6, 1],
    [2, 0, 7],
    [5, 7, 0],
    [6, 4, 1],
    [2, 7, 5],
    [6, 3, 4],
]


def map_from_neighbor_lists(neighbors: list[list[int]]) -> CombinatorialMap:
    """Build a map from per-vertex cyclically ordered neighbor lists.

    Only for simple graphs (no loops or parallel edges); dart v*d + j is the
    j-th edge end at vertex v.
    """
    n = len(neighbors)
    d = len(neighbors[0])
    if any(len(nb) != d for nb in neighbors):
        raise ValueError("all vertices must have the same degree")
    slot = {}
    for v, nbs in enumerate(neighbors):
        for j, u in enumerate(nbs):
            if (v, u) in slot:
                raise ValueError(f"parallel edge {v}-{u}: use an explicit pairing instead")
            slot[(v, u)] = v * d + j
    alpha = np.empty(n * d, dtype=np.int64)
    for (v, u), x in slot.items():
        if (u, v) not in slot:
            raise ValueError(f"edge {v}-{u} missing its reverse")
        alpha[x] = slot[(u, v)]
    sigma = np.empty(n * d, dtype=np.int64)
    for v in range(n):
        for j in range(d):
            sigma[v * d + j] = v * d + (j + 1) % d
    return CombinatorialMap(DartPairing(n, d, alpha), RotationSystem(n, d, sigma))


def cube_map(flipped_vertex: int | None = None) -> CombinatorialMap:
    """The cube skeleton with all rotations planar-counterclockwise; pass a
    vertex id to reverse that one vertex's cyclic order."""
    cmap = map_from_neighbor_lists(_CUBE_NEIGHBORS)
    if flipped_vertex is not None:
        cmap = CombinatorialMap(cmap.pairing, flip_vertex(cmap.rotation, flipped_vertex))
    return cmap


def theta_map(same_orientation: bool = True) -> CombinatorialMap:
    """Two vertices joined by three parallel edges (dart i paired with i+3).

    With both cyclic orders "increasing" the map has one hexagonal face
    (a torus); with opposite orders it has three bigon faces (a sphere).
    """
    alpha = np.array([3, 4, 5, 0, 1, 2])
    if same_orientation:
        sigma = np.array([1, 2, 0, 4, 5, 3])
    else:
        sigma = np.array([1, 2, 0, 5, 3, 4])
    return CombinatorialMap(DartPairing(2, 3, alpha), RotationSystem(2, 3, sigma))


def disjoint_union(a: CombinatorialMap, b: CombinatorialMap) -> CombinatorialMap:
    """Relabel b's cells after a's and combine; both maps must share d."""
    if a.d != b.d:
        raise ValueError("degree mismatch")
    off = a.num_darts
    alpha = np.concatenate([a.pairing.alpha, b.pairing.alpha + off])
    sigma = np.concatenate([a.rotation.sigma, b.rotation.sigma + off])
    n, d = a.n + b.n, a.d
    return CombinatorialMap(DartPairing(n, d, alpha), RotationSystem(n, d, sigma))


def fixture_path(name: str):
    """Path to a bundled .map file, e.g. fixture_path('cube_standard')."""
    return resources.files("mapgenus.data").joinpath(f"{name}.map")
