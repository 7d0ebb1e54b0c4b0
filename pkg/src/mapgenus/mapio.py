"""Text serialization of pairings, maps, and multigraphs.

Pairing format: line 1 is "n d"; line 2 holds the nd/2 pairs "a-b" with
a < b, sorted by a, whitespace separated.

Map format: a pairing block followed by a rotation block of n lines, line v
listing the d darts of cell v in cyclic order (starting at the cell's
smallest dart, so the encoding is canonical).
"""

from pathlib import Path

import numpy as np

from .config_model import DartPairing, Multigraph
from .rotation_map import CombinatorialMap, RotationSystem


def pairing_to_text(pairing: DartPairing) -> str:
    pairs = " ".join(f"{a}-{b}" for a, b in pairing.pairs())
    return f"{pairing.n} {pairing.d}\n{pairs}\n"


def _parse_pairing_lines(lines: list[str]) -> DartPairing:
    if len(lines) < 2:
        raise ValueError("pairing text needs a header line and a pair line")
    try:
        n, d = (int(tok) for tok in lines[0].split())
    except ValueError as exc:
        raise ValueError(f"bad pairing header {lines[0]!r}") from exc
    alpha = np.full(n * d, -1, dtype=np.int64)
    tokens = lines[1].split()
    if len(tokens) != n * d // 2:
        raise ValueError(f"expected {n * d // 2} pairs, got {len(tokens)}")
    for tok in tokens:
        try:
            a, b = (int(t) for t in tok.split("-"))
        except ValueError as exc:
            raise ValueError(f"bad pair token {tok!r}") from exc
        if not 0 <= a < b < n * d:
            raise ValueError(f"pair {tok!r} out of range or not a < b")
        if alpha[a] != -1 or alpha[b] != -1:
            raise ValueError(f"dart reused in pair {tok!r}")
        alpha[a], alpha[b] = b, a
    return DartPairing(n, d, alpha)


def pairing_from_text(text: str) -> DartPairing:
    return _parse_pairing_lines(_content_lines(text))


def map_to_text(cmap: CombinatorialMap) -> str:
    rot_lines = []
    for v in range(cmap.n):
        rot_lines.append(" ".join(str(x) for x in cmap.rotation.cycle_at(v)))
    return pairing_to_text(cmap.pairing) + "\n".join(rot_lines) + "\n"


def _content_lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def map_from_text(text: str) -> CombinatorialMap:
    lines = _content_lines(text)
    pairing = _parse_pairing_lines(lines)
    n, d = pairing.n, pairing.d
    if len(lines) != 2 + n:
        raise ValueError(f"expected {n} rotation lines, got {len(lines) - 2}")
    sigma = np.full(n * d, -1, dtype=np.int64)
    for v, line in enumerate(lines[2:]):
        darts = [int(t) for t in line.split()]
        if sorted(darts) != list(range(v * d, (v + 1) * d)):
            raise ValueError(f"rotation line {v} does not list the darts of cell {v}: {line!r}")
        for i, x in enumerate(darts):
            sigma[x] = darts[(i + 1) % d]
    return CombinatorialMap(pairing, RotationSystem(n, d, sigma))


def read_map(path) -> CombinatorialMap:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise OSError(f"cannot read map file {path}: {exc}") from exc
    return map_from_text(text)


def write_map(cmap: CombinatorialMap, path) -> None:
    path = Path(path)
    try:
        path.write_text(map_to_text(cmap))
    except OSError as exc:
        raise OSError(f"cannot write map file {path}: {exc}") from exc


def multigraph_to_dot(graph: Multigraph, name: str = "G") -> str:
    """DOT text for visualization; parallel edges and loops appear verbatim."""
    lines = [f"graph {name} {{"]
    for v in range(graph.n):
        lines.append(f"  {v};")
    for u, v in graph.edges.tolist():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
