import math

import numpy as np
import pytest

from mapgenus import (
    a_k_exact,
    enumerate_roots,
    expected_root_count_bound,
    find_root_in_face,
    project_to_multigraph,
    roots_of_faces,
    sample_map,
    trace_faces,
    validate_root,
)
from mapgenus.fixtures import cube_map, theta_map


class TestFindRootInFace:
    def test_simple_cube_faces_are_their_own_roots(self):
        cmap = cube_map()
        for face in trace_faces(cmap).faces:
            root = find_root_in_face(cmap, face)
            assert root.defect_vertex is None
            assert list(root.darts) == face
            assert validate_root(cmap, root)

    def test_composite_face_of_flipped_cube(self):
        cmap = cube_map(flipped_vertex=2)
        composite = [f for f in trace_faces(cmap).faces if len(f) == 12][0]
        root = find_root_in_face(cmap, composite)
        assert root.length <= 8
        assert validate_root(cmap, root)
        # the walk construction puts the only defect at the junction vertex
        assert root.defect_vertex is not None
        exhaustive = {r.canonical_key() for r in enumerate_roots(cmap, 12)}
        assert root.canonical_key() in exhaustive

    def test_theta_hexagon_yields_bigon_root(self):
        cmap = theta_map(True)
        face = trace_faces(cmap).faces[0]
        assert len(face) == 6
        root = find_root_in_face(cmap, face)
        assert root.length == 2
        assert validate_root(cmap, root)

    def test_lemma_every_face_contains_a_root(self):
        rng = np.random.default_rng(31)
        for _ in range(30):
            cmap = sample_map(100, 3, rng)
            for root in roots_of_faces(cmap):
                assert validate_root(cmap, root)


class TestEnumerateRoots:
    def test_cube_standard_roots_are_the_faces(self):
        cmap = cube_map()
        roots = enumerate_roots(cmap, 4)
        assert len(roots) == 6
        assert all(r.defect_vertex is None and r.length == 4 for r in roots)
        face_vertex_sets = {frozenset(x // 3 for x in f) for f in trace_faces(cmap).faces}
        assert {frozenset(r.vertices) for r in roots} == face_vertex_sets

    def test_cube_below_girth_is_empty(self):
        assert enumerate_roots(cube_map(), 3) == []

    def test_theta_two_edge_roots(self):
        roots = enumerate_roots(theta_map(True), 2)
        assert len(roots) == 6
        assert all(r.length == 2 for r in roots)
        assert all(validate_root(theta_map(True), r) for r in roots)

    def test_all_enumerated_roots_validate(self):
        rng = np.random.default_rng(32)
        for _ in range(20):
            cmap = sample_map(30, 3, rng)
            for root in enumerate_roots(cmap, 8):
                assert validate_root(cmap, root)

    def test_canonical_uniqueness(self):
        rng = np.random.default_rng(33)
        for _ in range(20):
            cmap = sample_map(30, 3, rng)
            roots = enumerate_roots(cmap, 8)
            keys = [(r.canonical_key(), r.defect_vertex) for r in roots]
            assert len(keys) == len(set(keys))

    def test_vertex_cycle_uniqueness_on_simple_maps(self):
        # on a simple graph the (vertex cycle, defect) pair identifies a root
        rng = np.random.default_rng(34)
        checked = 0
        while checked < 10:
            cmap = sample_map(20, 3, rng)
            mult = project_to_multigraph(cmap.pairing).multiplicities()
            if any(u == v or c > 1 for (u, v), c in mult.items()):
                continue
            checked += 1
            canon = []
            for r in enumerate_roots(cmap, 8):
                rots = [r.vertices[i:] + r.vertices[:i] for i in range(r.length)]
                canon.append((min(rots), r.defect_vertex))
            assert len(canon) == len(set(canon))

    def test_per_cycle_cap(self):
        # every underlying k-cycle hosts at most k+1 roots
        rng = np.random.default_rng(35)
        for _ in range(20):
            cmap = sample_map(20, 3, rng)
            by_cycle = {}
            for r in enumerate_roots(cmap, 10):
                alpha = cmap.pairing.alpha
                cycle = frozenset(frozenset((x, int(alpha[x]))) for x in r.darts)
                by_cycle.setdefault(cycle, []).append(r)
            for cycle, roots in by_cycle.items():
                assert len(roots) <= len(cycle) + 1

    def test_rejects_bad_max_len(self):
        with pytest.raises(ValueError):
            enumerate_roots(cube_map(), 0)


class TestExpectedRootCountBound:
    def test_decomposition_identity(self):
        # sum (k+1)/(d-1)^k E(X_k) == (1/2) sum a_k + (1/2) sum a_k / k
        for n, L in [(100, 10), (10**4, 123)]:
            lhs = expected_root_count_bound(n, 3, L)
            rhs = 0.5 * sum(a_k_exact(n, 3, k) for k in range(3, L + 1)) + 0.5 * sum(
                a_k_exact(n, 3, k) / k for k in range(3, L + 1)
            )
            assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_empty_range(self):
        assert expected_root_count_bound(100, 3, 2) == 0.0

    def test_magnitude_at_n_1e4(self):
        m = 3 * 10**4 // 2
        value = expected_root_count_bound(10**4, 3, math.ceil(math.sqrt(m)))
        assert value <= 1.3 * math.sqrt(3 * 10**4)

    def test_restricted_to_cubic(self):
        with pytest.raises(ValueError):
            expected_root_count_bound(100, 4, 10)
        with pytest.raises(ValueError):
            expected_root_count_bound(10, 3, 11)

    def test_empirical_face_and_root_counts_vs_bound(self):
        # The formula upper-bounds the expected number of short faces. The
        # expected number of enumerated (directed) roots is exactly twice the
        # formula: a cycle and its reversal qualify independently, while the
        # per-cycle pattern count behind the formula fixes one direction.
        rng = np.random.default_rng(2026)
        n_maps = 200
        for n in (100, 400):
            L = math.ceil(math.sqrt(n))
            bound = expected_root_count_bound(n, 3, L)
            root_counts, face_counts = [], []
            for _ in range(n_maps):
                cmap = sample_map(n, 3, rng)
                roots = enumerate_roots(cmap, L)
                root_counts.append(sum(1 for r in roots if r.length >= 3))
                face_counts.append(int((trace_faces(cmap).lengths <= L).sum()))
            se_roots = np.std(root_counts) / math.sqrt(n_maps)
            se_faces = np.std(face_counts) / math.sqrt(n_maps)
            assert np.mean(face_counts) <= bound + 3 * se_faces
            assert np.mean(root_counts) <= 2 * bound + 3 * se_roots
