"""Shared independent oracles for the test suite.

These deliberately re-derive quantities by a different route than the library
(explicit orbit walks, subset enumeration) so the two can cross-check.
"""

import itertools

import numpy as np
import pytest


def naive_face_trace(cmap):
    """Reference face tracer: walk each orbit of sigma[alpha] explicitly.

    Returns (F, sorted lengths, faces as frozensets of darts).
    """
    phi = cmap.rotation.sigma[cmap.pairing.alpha]
    seen = [False] * len(phi)
    faces = []
    for s in range(len(phi)):
        if seen[s]:
            continue
        cyc = []
        x = s
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = int(phi[x])
        faces.append(cyc)
    return len(faces), sorted(len(c) for c in faces), [frozenset(c) for c in faces]


def brute_force_census(pairing, k_max):
    """Reference k-cycle counter: test every k-subset of the edge list.

    A subset is a k-cycle iff it touches exactly k cells, every touched cell
    has dart-degree 2, and the cells are connected.
    """
    d = pairing.d
    edges = pairing.pairs()
    counts = dict.fromkeys(range(1, k_max + 1), 0)
    for k in counts:
        for subset in itertools.combinations(edges, k):
            cells = {}
            for a, b in subset:
                cells[a // d] = cells.get(a // d, 0) + 1
                cells[b // d] = cells.get(b // d, 0) + 1
            if len(cells) != k or any(c != 2 for c in cells.values()):
                continue
            adj = {v: set() for v in cells}
            for a, b in subset:
                adj[a // d].add(b // d)
                adj[b // d].add(a // d)
            stack, seen = [next(iter(cells))], set()
            while stack:
                v = stack.pop()
                if v in seen:
                    continue
                seen.add(v)
                stack.extend(adj[v])
            if len(seen) == len(cells):
                counts[k] += 1
    return counts


@pytest.fixture(scope="session")
def enumerated_2_3():
    from mapgenus import enumerate_configurations

    return list(enumerate_configurations(2, 3))
