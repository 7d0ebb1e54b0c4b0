"""Configuration model for random d-regular multigraphs.

A configuration on n cells of size d is a perfect matching (fixed-point-free
involution) on the nd darts 0..nd-1, where dart x belongs to cell x // d.
Projecting matched dart pairs to their cells gives a d-regular multigraph
with loops and parallel edges allowed.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

ENUMERATION_LIMIT = 10**7
_CENSUS_STATE_LIMIT = 2 * 10**7


def _check_params(n: int, d: int) -> None:
    if n < 1:
        raise ValueError(f"need at least one vertex, got n={n}")
    if d < 3:
        raise ValueError(f"degree must be at least 3, got d={d}")
    if (n * d) % 2 != 0:
        raise ValueError(f"n*d = {n * d} is odd, no perfect matching on the darts exists")


@dataclass(frozen=True, eq=False)
class DartPairing:
    """A configuration: fixed-point-free involution ``alpha`` on n*d darts."""

    n: int
    d: int
    alpha: np.ndarray

    def __post_init__(self):
        _check_params(self.n, self.d)
        alpha = np.asarray(self.alpha, dtype=np.int64)
        nd = self.n * self.d
        if alpha.shape != (nd,):
            raise ValueError(f"alpha must have shape ({nd},), got {alpha.shape}")
        ids = np.arange(nd)
        if np.any(alpha[alpha] != ids):
            raise ValueError("alpha is not an involution")
        if np.any(alpha == ids):
            raise ValueError("alpha has a fixed point (unmatched dart)")
        alpha.setflags(write=False)
        object.__setattr__(self, "alpha", alpha)

    @property
    def num_darts(self) -> int:
        return self.n * self.d

    @property
    def m(self) -> int:
        """Number of edges (dart pairs)."""
        return self.num_darts // 2

    def cell_of(self, dart: int) -> int:
        return dart // self.d

    def pairs(self) -> list[tuple[int, int]]:
        """The matching as a list of (a, b) with a < b, sorted by a."""
        a = np.arange(self.num_darts)
        keep = a < self.alpha
        return list(zip(a[keep].tolist(), self.alpha[keep].tolist()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, DartPairing):
            return NotImplemented
        return self.n == other.n and self.d == other.d and np.array_equal(self.alpha, other.alpha)


@dataclass(frozen=True)
class CycleCensus:
    """Counts of k-cycles of a configuration, for k = 1..k_max.

    A k-cycle is a set of k edges joining k distinct cells cyclically;
    a 1-cycle is a loop (a within-cell pair), a 2-cycle a coupling
    (two parallel edges between the same two cells).
    """

    counts: dict[int, int]

    def __getitem__(self, k: int) -> int:
        return self.counts.get(k, 0)

    @property
    def k_max(self) -> int:
        return max(self.counts)


@dataclass(frozen=True, eq=False)
class Multigraph:
    """Projection of a configuration: vertex set 0..n-1 plus an edge multiset."""

    n: int
    edges: np.ndarray  # shape (m, 2), u <= v, lexicographically sorted

    def __post_init__(self):
        edges = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        edges = np.sort(edges, axis=1)
        order = np.lexsort((edges[:, 1], edges[:, 0]))
        edges = edges[order]
        edges.setflags(write=False)
        object.__setattr__(self, "edges", edges)

    @property
    def m(self) -> int:
        return self.edges.shape[0]

    def degrees(self) -> np.ndarray:
        """Vertex degrees, loops counted twice."""
        return np.bincount(self.edges.ravel(), minlength=self.n)

    def multiplicities(self) -> dict[tuple[int, int], int]:
        keys, counts = np.unique(self.edges, axis=0, return_counts=True)
        return {(int(u), int(v)): int(c) for (u, v), c in zip(keys, counts)}

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.edges, other.edges)


def sample_configuration(n: int, d: int, rng=None) -> DartPairing:
    """Draw a uniformly random configuration on n cells of degree d.

    Shuffles the dart array and pairs consecutive entries, which induces the
    uniform distribution on the (nd-1)!! perfect matchings.
    """
    _check_params(n, d)
    rng = np.random.default_rng(rng)
    perm = rng.permutation(n * d)
    alpha = np.empty(n * d, dtype=np.int64)
    alpha[perm[0::2]] = perm[1::2]
    alpha[perm[1::2]] = perm[0::2]
    return DartPairing(n, d, alpha)


def configuration_space_size(n: int, d: int) -> int:
    """Exact number of configurations, (nd - 1)!!."""
    _check_params(n, d)
    m = n * d // 2
    return math.factorial(2 * m) // (2**m * math.factorial(m))


def enumerate_configurations(n: int, d: int) -> Iterator[DartPairing]:
    """Yield every configuration exactly once, in lexicographic order of the
    sorted pair list (smallest dart paired first).

    Used as the exhaustive oracle for expectation formulas; refuses to run
    when the configuration count exceeds ENUMERATION_LIMIT.
    """
    total = configuration_space_size(n, d)
    if total > ENUMERATION_LIMIT:
        raise ValueError(
            f"configuration space for n={n}, d={d} has {total} elements, "
            f"too large to enumerate (limit {ENUMERATION_LIMIT})"
        )
    nd = n * d
    alpha = np.empty(nd, dtype=np.int64)

    def rec(free: list[int]) -> Iterator[None]:
        if not free:
            yield None
            return
        a = free[0]
        for i in range(1, len(free)):
            b = free[i]
            alpha[a], alpha[b] = b, a
            yield from rec(free[1:i] + free[i + 1 :])

    for _ in rec(list(range(nd))):
        yield DartPairing(n, d, alpha.copy())


@lru_cache(maxsize=32)
def _other_darts(n: int, d: int) -> np.ndarray:
    """For each dart y, the d-1 other darts of y's cell; shape (nd, d-1)."""
    slots = np.arange(d)
    template = np.empty((d, d - 1), dtype=np.int64)
    for j in range(d):
        template[j] = np.delete(slots, j)
    base = (np.arange(n * d) // d) * d
    out = base[:, None] + template[np.arange(n * d) % d]
    out.setflags(write=False)
    return out


def count_k_cycles(pairing: DartPairing, k_max: int) -> CycleCensus:
    """Count the k-cycles of a configuration for every k = 1..k_max.

    Counts ordered dart walks through distinct cells and divides by the 2k
    rotations/reflections of each cycle, so parallel edges between the same
    cells yield distinct cycles (edge-set counting).
    """
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    n, d = pairing.n, pairing.d
    nd = n * d
    alpha = pairing.alpha
    cells = np.arange(nd) // d
    counts: dict[int, int] = {}

    # level 1: every dart is a walk start; arrival in the same cell is a loop
    arrive_cell = cells[alpha]
    closed = arrive_cell == cells
    ordered = int(closed.sum())
    assert ordered % 2 == 0
    counts[1] = ordered // 2

    limit = min(k_max, n)
    if limit >= 2:
        exits = _other_darts(n, d)
        alive = ~closed
        y = alpha[alive]
        visited = [cells[alive]]  # columns: cells visited before the current arrival
        for k in range(2, limit + 1):
            if y.size == 0:
                break
            visited.append(cells[y])
            if y.size * (d - 1) * (k + 1) > _CENSUS_STATE_LIMIT:
                raise ValueError(f"cycle census too large at k={k} (n={n}, d={d})")
            # branch over the d-1 exits at the current cell
            x = exits[y].ravel()
            parent = np.repeat(np.arange(y.size), d - 1)
            arrive_cell = cells[alpha[x]]
            closed = arrive_cell == visited[0][parent]
            ordered = int(closed.sum())
            assert ordered % (2 * k) == 0
            counts[k] = ordered // (2 * k)
            hit = closed
            for col in visited[1:]:
                hit = hit | (arrive_cell == col[parent])
            keep_mask = ~hit
            keep = parent[keep_mask]
            y = alpha[x[keep_mask]]
            visited = [col[keep] for col in visited]

    for k in range(2, k_max + 1):
        counts.setdefault(k, 0)
    return CycleCensus(counts)


def is_simple(pairing: DartPairing) -> bool:
    """True iff the configuration has no loops and no couplings (X1 = X2 = 0)."""
    census = count_k_cycles(pairing, 2)
    return census[1] == 0 and census[2] == 0


def project_to_multigraph(pairing: DartPairing) -> Multigraph:
    """The d-regular multigraph whose edges are the cell pairs of the matching."""
    a = np.arange(pairing.num_darts)
    keep = a < pairing.alpha
    edges = np.stack([a[keep] // pairing.d, pairing.alpha[keep] // pairing.d], axis=1)
    return Multigraph(pairing.n, edges)
