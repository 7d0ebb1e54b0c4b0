"""Seeded Monte Carlo harness: sweep vertex counts, sample maps, and compare
face/genus/cycle statistics against the closed-form references.

Reproducibility contract: trial (n, i) draws from a dedicated generator
seeded by hashing (master_seed, n, i), so results are independent of worker
count and execution order. All aggregate statistics reduce exact integer
per-trial sums, which makes the reduction genuinely order-independent.
"""

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .config_model import count_k_cycles, sample_configuration
from .expectations import lower_bound_sum, small_face_upper_bound
from .rotation_map import (
    CombinatorialMap,
    _map_component_labels,
    sample_orientation,
    trace_faces,
)

_REJECTION_LIMIT = 10**6


@dataclass(frozen=True)
class ExperimentSpec:
    n_values: tuple[int, ...]
    d: int = 3
    trials: int = 1000
    master_seed: int = 0
    mode: str = "raw"  # "raw" or "simple" (rejection sampling to simple configurations)
    k_max: int = 3

    def __post_init__(self):
        object.__setattr__(self, "n_values", tuple(self.n_values))
        if self.trials < 1:
            raise ValueError(f"need trials >= 1, got {self.trials}")
        if self.k_max < 1:
            raise ValueError(f"need k_max >= 1, got {self.k_max}")
        if self.mode not in ("raw", "simple"):
            raise ValueError(f"mode must be 'raw' or 'simple', got {self.mode!r}")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must fit in 64 bits")
        for n in self.n_values:
            if (n * self.d) % 2 != 0:
                raise ValueError(f"n*d odd for n={n}, d={self.d}")


@dataclass(frozen=True)
class TrialRecord:
    n: int
    index: int
    F: int
    chi: int
    connected: bool
    simple: bool
    genus_total: int  # sum of per-component genera; the genus itself when connected
    components: int
    face_length_hist: tuple[int, ...]  # bucket b counts faces with 2^b <= length < 2^(b+1)
    x_counts: tuple[int, ...]  # X_1 .. X_k_max
    rejections: int = 0


def run_trial(n: int, d: int, index: int, master_seed: int, mode: str = "raw", k_max: int = 3) -> TrialRecord:
    """One seeded sample of (configuration, orientation) with its statistics."""
    rng = np.random.default_rng(np.random.SeedSequence([master_seed, n, index]))
    rejections = 0
    while True:
        pairing = sample_configuration(n, d, rng)
        census = count_k_cycles(pairing, max(k_max, 2))
        simple = census[1] == 0 and census[2] == 0
        if mode == "raw" or simple:
            break
        rejections += 1
        if rejections >= _REJECTION_LIMIT:
            raise RuntimeError(f"simple-mode trial (n={n}, i={index}) exceeded {_REJECTION_LIMIT} rejections")
    rotation = sample_orientation(n, d, rng)
    cmap = CombinatorialMap(pairing, rotation)
    decomposition = trace_faces(cmap)

    F = decomposition.F
    chi = n - n * d // 2 + F
    components = int(np.unique(_map_component_labels(cmap)).size)
    assert chi % 2 == 0
    genus_total = components - chi // 2

    # bucket b holds faces with 2^b <= length < 2^(b+1)
    n_buckets = int(n * d).bit_length()
    buckets = np.floor(np.log2(decomposition.lengths)).astype(int)
    hist = np.bincount(buckets, minlength=n_buckets)
    return TrialRecord(
        n=n,
        index=index,
        F=F,
        chi=chi,
        connected=components == 1,
        simple=simple,
        genus_total=genus_total,
        components=components,
        face_length_hist=tuple(int(c) for c in hist),
        x_counts=tuple(census[k] for k in range(1, k_max + 1)),
        rejections=rejections,
    )


@dataclass(frozen=True)
class AggregateRow:
    n: int
    trials: int
    mean_F: float
    var_F: float
    mean_genus: float  # connected-conditioned (headline)
    simple_frac: float
    connected_frac: float
    mean_xk: tuple[float, ...]
    ref_lower_sum: float
    ref_upper_bound: float
    mean_genus_total: float  # unconditioned, per-component genera summed
    mean_F_connected: float
    connected_count: int


@dataclass(frozen=True)
class Aggregate:
    d: int
    k_max: int
    mode: str
    master_seed: int
    rows: tuple[AggregateRow, ...] = field(default_factory=tuple)


def _reduce_rows(spec: ExperimentSpec, records: list[TrialRecord]) -> Aggregate:
    rows = []
    for n in spec.n_values:
        recs = [r for r in records if r.n == n]
        T = len(recs)
        sum_f = sum(r.F for r in recs)
        sum_f2 = sum(r.F * r.F for r in recs)
        mean_f = sum_f / T
        var_f = (sum_f2 - sum_f * sum_f / T) / (T - 1) if T > 1 else 0.0
        conn = [r for r in recs if r.connected]
        c = len(conn)
        sum_f_conn = sum(r.F for r in conn)
        sum_g_conn = sum(r.genus_total for r in conn)
        rows.append(
            AggregateRow(
                n=n,
                trials=T,
                mean_F=mean_f,
                var_F=var_f,
                mean_genus=sum_g_conn / c if c else math.nan,
                simple_frac=sum(r.simple for r in recs) / T,
                connected_frac=c / T,
                mean_xk=tuple(
                    sum(r.x_counts[k] for r in recs) / T for k in range(spec.k_max)
                ),
                ref_lower_sum=lower_bound_sum(n, spec.d) if n >= 4 else math.nan,
                ref_upper_bound=small_face_upper_bound(n, spec.d).total if n >= 4 else math.nan,
                mean_genus_total=sum(r.genus_total for r in recs) / T,
                mean_F_connected=sum_f_conn / c if c else math.nan,
                connected_count=c,
            )
        )
    return Aggregate(spec.d, spec.k_max, spec.mode, spec.master_seed, tuple(rows))


def _trial_block(args) -> list[TrialRecord]:
    n, d, start, stop, master_seed, mode, k_max = args
    return [run_trial(n, d, i, master_seed, mode, k_max) for i in range(start, stop)]


def run_trials(spec: ExperimentSpec, workers: int = 1) -> tuple[Aggregate, list[TrialRecord]]:
    """Run the sweep; identical specs give identical results at any worker count."""
    tasks = []
    for n in spec.n_values:
        chunk = max(1, spec.trials // max(1, 4 * workers))
        for start in range(0, spec.trials, chunk):
            tasks.append((n, spec.d, start, min(start + chunk, spec.trials), spec.master_seed, spec.mode, spec.k_max))

    if workers <= 1:
        blocks = [_trial_block(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(_trial_block, tasks))

    records = [rec for block in blocks for rec in block]
    records.sort(key=lambda r: (spec.n_values.index(r.n), r.index))
    return _reduce_rows(spec, records), records


# ---------------------------------------------------------------------------
# bound comparison


@dataclass(frozen=True)
class BoundsRow:
    n: int
    mean_F: float
    f_over_log: float
    f_over_sqrt: float
    genus_over_n: float


@dataclass(frozen=True)
class BoundsReport:
    rows: tuple[BoundsRow, ...]
    f_increasing: bool
    f_over_sqrt_nonincreasing: bool
    f_over_log_window: float  # max/min ratio of mean_F / log n across the sweep
    genus_rate_change: float  # relative change of genus/n between the last two n

    @property
    def f_over_log_bounded(self) -> bool:
        return self.f_over_log_window <= 3.0

    @property
    def genus_linear(self) -> bool:
        return self.genus_rate_change <= 0.05

    def render(self) -> str:
        lines = [f"{'n':>8} {'mean_F':>10} {'F/log n':>10} {'F/sqrt n':>10} {'genus/n':>10}"]
        for r in self.rows:
            lines.append(
                f"{r.n:>8} {r.mean_F:>10.4f} {r.f_over_log:>10.4f} {r.f_over_sqrt:>10.4f} {r.genus_over_n:>10.4f}"
            )
        lines.append(f"mean_F strictly increasing:        {self.f_increasing}")
        lines.append(f"mean_F / sqrt(n) non-increasing:   {self.f_over_sqrt_nonincreasing}")
        lines.append(
            f"mean_F / log(n) window (max/min):  {self.f_over_log_window:.3f} (bounded: {self.f_over_log_bounded})"
        )
        lines.append(
            f"genus/n change at tail:            {self.genus_rate_change:.4f} (linear: {self.genus_linear})"
        )
        return "\n".join(lines)


def compare_bounds(agg: Aggregate) -> BoundsReport:
    """Check the sweep against the expected growth orders: face count of
    logarithmic order (and at most sqrt order), genus growing linearly."""
    rows = sorted(agg.rows, key=lambda r: r.n)
    ns = [r.n for r in rows]
    if len(ns) < 3 or max(ns) < 32 * min(ns):
        raise ValueError(
            f"bound comparison needs >= 3 vertex counts spanning a >= 32x range, got {ns}"
        )
    brows = tuple(
        BoundsRow(
            n=r.n,
            mean_F=r.mean_F,
            f_over_log=r.mean_F / math.log(r.n),
            f_over_sqrt=r.mean_F / math.sqrt(r.n),
            genus_over_n=r.mean_genus / r.n,
        )
        for r in rows
    )
    f = [r.mean_F for r in brows]
    fsq = [r.f_over_sqrt for r in brows]
    flog = [r.f_over_log for r in brows]
    g_last, g_prev = brows[-1].genus_over_n, brows[-2].genus_over_n
    return BoundsReport(
        rows=brows,
        f_increasing=all(a < b for a, b in zip(f, f[1:])),
        f_over_sqrt_nonincreasing=all(a >= b for a, b in zip(fsq, fsq[1:])),
        f_over_log_window=max(flog) / min(flog),
        genus_rate_change=abs(g_last - g_prev) / abs(g_last),
    )


# ---------------------------------------------------------------------------
# export

_BASE_COLUMNS = ["n", "trials", "mean_F", "var_F", "mean_genus", "simple_frac", "connected_frac"]
_REF_COLUMNS = ["ref_lower_sum", "ref_upper_bound", "mean_genus_total", "mean_F_connected"]


def _columns(k_max: int) -> list[str]:
    return _BASE_COLUMNS + [f"mean_X{k}" for k in range(1, k_max + 1)] + _REF_COLUMNS


def _row_values(row: AggregateRow) -> list:
    return (
        [row.n, row.trials, row.mean_F, row.var_F, row.mean_genus, row.simple_frac, row.connected_frac]
        + list(row.mean_xk)
        + [row.ref_lower_sum, row.ref_upper_bound, row.mean_genus_total, row.mean_F_connected]
    )


def _fmt(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def aggregate_to_csv(agg: Aggregate) -> str:
    lines = [",".join(_columns(agg.k_max))]
    for row in agg.rows:
        lines.append(",".join(_fmt(v) for v in _row_values(row)))
    return "\n".join(lines) + "\n"


def aggregate_from_csv(text: str, k_max: int) -> tuple[AggregateRow, ...]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if lines[0] != ",".join(_columns(k_max)):
        raise ValueError("CSV header does not match the aggregate schema")
    rows = []
    for ln in lines[1:]:
        vals = ln.split(",")
        base = 7
        rows.append(
            AggregateRow(
                n=int(vals[0]),
                trials=int(vals[1]),
                mean_F=float(vals[2]),
                var_F=float(vals[3]),
                mean_genus=float(vals[4]),
                simple_frac=float(vals[5]),
                connected_frac=float(vals[6]),
                mean_xk=tuple(float(v) for v in vals[base : base + k_max]),
                ref_lower_sum=float(vals[base + k_max]),
                ref_upper_bound=float(vals[base + k_max + 1]),
                mean_genus_total=float(vals[base + k_max + 2]),
                mean_F_connected=float(vals[base + k_max + 3]),
                connected_count=-1,  # not serialized in the CSV schema
            )
        )
    return tuple(rows)


def aggregate_to_json_dict(agg: Aggregate) -> dict:
    return {
        "d": agg.d,
        "k_max": agg.k_max,
        "mode": agg.mode,
        "master_seed": agg.master_seed,
        "columns": _columns(agg.k_max),
        "rows": [
            dict(zip(_columns(agg.k_max), _row_values(r))) | {"connected_count": r.connected_count}
            for r in agg.rows
        ],
    }


def aggregate_from_json_dict(doc: dict) -> Aggregate:
    k_max = doc["k_max"]
    rows = []
    for r in doc["rows"]:
        rows.append(
            AggregateRow(
                n=r["n"],
                trials=r["trials"],
                mean_F=r["mean_F"],
                var_F=r["var_F"],
                mean_genus=r["mean_genus"],
                simple_frac=r["simple_frac"],
                connected_frac=r["connected_frac"],
                mean_xk=tuple(r[f"mean_X{k}"] for k in range(1, k_max + 1)),
                ref_lower_sum=r["ref_lower_sum"],
                ref_upper_bound=r["ref_upper_bound"],
                mean_genus_total=r["mean_genus_total"],
                mean_F_connected=r["mean_F_connected"],
                connected_count=r["connected_count"],
            )
        )
    return Aggregate(doc["d"], k_max, doc["mode"], doc["master_seed"], tuple(rows))


def export(agg: Aggregate, records: list[TrialRecord] | None, format: str, path) -> list[Path]:
    """Write the aggregate (and optionally the full trial stream) to disk.

    Returns the written paths; the record stream goes to <path>.records.json.
    """
    path = Path(path)
    written = []
    try:
        if format == "csv":
            path.write_text(aggregate_to_csv(agg))
        elif format == "json":
            path.write_text(json.dumps(aggregate_to_json_dict(agg), indent=1) + "\n")
        else:
            raise ValueError(f"unknown format {format!r}")
        written.append(path)
        if records is not None:
            rec_path = path.with_name(path.name + ".records.json")
            rec_path.write_text(json.dumps([asdict(r) for r in records], indent=0) + "\n")
            written.append(rec_path)
    except OSError as exc:
        raise OSError(f"cannot write experiment output to {path}: {exc}") from exc
    return written


# ---------------------------------------------------------------------------
# SVG plot (hand-rolled so the bytes are reproducible across environments)


def svg_mean_faces(agg: Aggregate, width: int = 640, height: int = 440) -> str:
    """Mean face count vs n on a log-x axis, with sqrt(n) and log(n) reference
    curves anchored at the smallest n."""
    rows = sorted(agg.rows, key=lambda r: r.n)
    if not rows:
        raise ValueError("empty aggregate, nothing to plot")
    ns = [r.n for r in rows]
    f = [r.mean_F for r in rows]
    c_sqrt = f[0] / math.sqrt(ns[0])
    c_log = f[0] / math.log(ns[0]) if ns[0] > 1 else f[0]

    lo, hi = math.log10(ns[0]), math.log10(ns[-1])
    span = hi - lo if hi > lo else 1.0
    grid = [10 ** (lo + span * i / 48) for i in range(49)]
    ymax = max(f + [c_sqrt * math.sqrt(g) for g in grid]) * 1.08

    ml, mr, mt, mb = 56, 16, 16, 40
    pw, ph = width - ml - mr, height - mt - mb

    def X(n):
        return ml + pw * (math.log10(n) - lo) / span

    def Y(v):
        return mt + ph * (1.0 - v / ymax)

    def poly(pts, color, dash=""):
        p = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
        return f'<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash} points="{p}"/>'

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{ml}" y1="{mt + ph}" x2="{ml + pw}" y2="{mt + ph}" stroke="black"/>',
        f'<line x1="{ml}" y1="{mt}" x2="{ml}" y2="{mt + ph}" stroke="black"/>',
    ]
    for n in ns:
        parts.append(
            f'<text x="{X(n):.2f}" y="{mt + ph + 16}" font-size="11" text-anchor="middle">{n}</text>'
        )
    for i in range(5):
        v = ymax * i / 4
        parts.append(
            f'<text x="{ml - 6}" y="{Y(v):.2f}" font-size="11" text-anchor="end">{v:.1f}</text>'
        )
    parts.append(poly([(X(g), Y(c_sqrt * math.sqrt(g))) for g in grid], "#888888", ' stroke-dasharray="5,3"'))
    parts.append(poly([(X(g), Y(c_log * math.log(g))) for g in grid], "#bbbbbb", ' stroke-dasharray="2,3"'))
    parts.append(poly([(X(n), Y(v)) for n, v in zip(ns, f)], "#1f5fa8"))
    for n, v in zip(ns, f):
        parts.append(f'<circle cx="{X(n):.2f}" cy="{Y(v):.2f}" r="3" fill="#1f5fa8"/>')
    parts.append(
        f'<text x="{ml + 8}" y="{mt + 14}" font-size="12" fill="#1f5fa8">mean F</text>'
    )
    parts.append(
        f'<text x="{ml + 8}" y="{mt + 30}" font-size="12" fill="#888888">~ sqrt(n)</text>'
    )
    parts.append(
        f'<text x="{ml + 8}" y="{mt + 46}" font-size="12" fill="#bbbbbb">~ log(n)</text>'
    )
    parts.append(f'<text x="{ml + pw // 2}" y="{height - 8}" font-size="12" text-anchor="middle">n (log scale)</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
