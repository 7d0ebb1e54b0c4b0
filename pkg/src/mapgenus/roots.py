"""Roots: simple closed paths on which the rotation system takes the left
turn at every vertex except at most one.

Every face of a map contains a root: walk the face until the vertex sequence
first repeats; the enclosed segment is a simple cycle whose interior turns
are all left turns, so only the junction vertex can disagree.
"""

from dataclasses import dataclass

from .config_model import _other_darts
from .expectations import a_k_exact
from .rotation_map import CombinatorialMap, FaceDecomposition

_SEARCH_STATE_LIMIT = 10**7


@dataclass(frozen=True)
class RootPath:
    """A directed simple dart cycle with at most one non-left-turn vertex.

    ``darts[i]`` is the dart leaving ``vertices[i]``; its partner arrives at
    ``vertices[i+1]`` (cyclically). ``defect_vertex`` is the vertex whose exit
    is not the left-turn continuation, or None if the cycle is a face.
    """

    vertices: tuple[int, ...]
    darts: tuple[int, ...]
    defect_vertex: int | None

    @property
    def length(self) -> int:
        return len(self.darts)

    def canonical_key(self) -> tuple[int, ...]:
        """Rotation-invariant identity: the dart cycle rotated to start at
        its smallest dart. Reversed traversals are distinct roots."""
        i = self.darts.index(min(self.darts))
        return self.darts[i:] + self.darts[:i]


def find_root_in_face(cmap: CombinatorialMap, face: list[int]) -> RootPath:
    """The root enclosed by the first self-intersection of the face walk.

    A simple face is returned whole with no defect.
    """
    d = cmap.d
    sigma = cmap.rotation.sigma
    L = len(face)
    seen: dict[int, int] = {}
    t1 = t2 = None
    for t, x in enumerate(face):
        v = x // d
        if v in seen:
            t1, t2 = seen[v], t
            break
        seen[v] = t
    if t1 is None:
        t1, t2 = 0, L  # simple face: closes on its starting vertex
    darts = tuple(face[t1:t2])
    vertices = tuple(x // d for x in darts)
    left_exit = int(sigma[cmap.pairing.alpha[darts[-1]]])
    defect = vertices[0] if darts[0] != left_exit else None
    return RootPath(vertices, darts, defect)


def validate_root(cmap: CombinatorialMap, root: RootPath) -> bool:
    """Independent re-walk of a RootPath: simple, closed, and at most one
    vertex where the exit dart is not the left-turn continuation."""
    d = cmap.d
    alpha, sigma = cmap.pairing.alpha, cmap.rotation.sigma
    L = root.length
    if L < 1 or len(root.vertices) != L:
        return False
    if len(set(root.vertices)) != L:
        return False
    defects = []
    for i in range(L):
        x = root.darts[i]
        if x // d != root.vertices[i]:
            return False
        arrival = int(alpha[x])
        nxt = root.vertices[(i + 1) % L]
        if arrival // d != nxt:
            return False
        if root.darts[(i + 1) % L] != int(sigma[arrival]):
            defects.append(nxt)
    if len(defects) > 1:
        return False
    if defects:
        return root.defect_vertex == defects[0]
    return root.defect_vertex is None


def roots_of_faces(cmap: CombinatorialMap, decomposition: FaceDecomposition | None = None) -> list[RootPath]:
    """One root per face, via find_root_in_face."""
    if decomposition is None:
        from .rotation_map import trace_faces

        decomposition = trace_faces(cmap)
    return [find_root_in_face(cmap, face) for face in decomposition.faces]


def enumerate_roots(cmap: CombinatorialMap, max_len: int) -> list[RootPath]:
    """Every root of length <= max_len, each exactly once.

    Roots are directed dart cycles counted up to rotation (the stored tuple
    starts at the smallest dart). The search walks dart paths through
    distinct vertices with a budget of one non-left-turn step, and only
    extends with darts above the starting dart so each cycle is discovered
    from its minimum.
    """
    if max_len < 1:
        raise ValueError(f"need max_len >= 1, got {max_len}")
    n, d = cmap.n, cmap.d
    alpha, sigma = cmap.pairing.alpha, cmap.rotation.sigma
    exits = _other_darts(n, d)
    found: list[RootPath] = []
    states = 0

    def extend(x0: int, path: list[int], cells: set[int], defect_at: int | None):
        nonlocal states
        states += 1
        if states > _SEARCH_STATE_LIMIT:
            raise RuntimeError(
                f"root search exceeded {_SEARCH_STATE_LIMIT} states at max_len={max_len}"
            )
        arrival = int(alpha[path[-1]])
        v = arrival // d
        start_vertex = x0 // d
        left = int(sigma[arrival])
        if v == start_vertex:
            # closing the cycle: the exit at the start vertex is x0 itself
            if x0 != left and defect_at is not None:
                return
            defect = start_vertex if x0 != left else defect_at
            darts = tuple(path)
            found.append(RootPath(tuple(x // d for x in darts), darts, defect))
            return
        if v in cells or len(path) >= max_len:
            return
        cells.add(v)
        for nxt in exits[arrival]:
            nxt = int(nxt)
            if nxt < x0:
                continue  # this cycle is enumerated from a smaller start dart
            if nxt == left:
                extend(x0, path + [nxt], cells, defect_at)
            elif defect_at is None:
                extend(x0, path + [nxt], cells, v)
        cells.remove(v)

    for x0 in range(n * d):
        extend(x0, [x0], {x0 // d}, None)

    found.sort(key=lambda r: (r.length, r.darts))
    return found


def expected_root_count_bound(n: int, d: int, max_len: int) -> float:
    """Upper-bound sum for the expected number of short faces via roots:
    sum_{k=3}^{max_len} (k+1) E(X_k) / (d-1)^k = sum (k+1) a_k / (2k).

    The (k+1) patterns per cycle assume one alternative turn at the defect
    vertex, which is the cubic case; only d = 3 is supported.
    """
    if d != 3:
        raise ValueError("the (k+1) root count per cycle is specific to d = 3")
    if max_len > n:
        raise ValueError(f"need max_len <= n, got max_len={max_len}, n={n}")
    return sum((k + 1) * a_k_exact(n, d, k) / (2 * k) for k in range(3, max_len + 1))
