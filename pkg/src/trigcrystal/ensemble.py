"""Monte Carlo ensembles of real zeros and their empirical statistics.

Statistics live in the rescaled coordinate x -> N*x/pi, where the 2N
fundamental zeros per period have unit mean spacing, so the circle has
circumference 2N.  Everything here is computed from per-realization root
lists produced in realization-index order; partial results are reduced in
that fixed order, which makes every estimate independent of how the
realizations were partitioned across workers.
"""

from __future__ import annotations

import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import poly, roots

__all__ = [
    "Histogram",
    "PairCorrelationEstimate",
    "rescale_zeros",
    "real_zero_ensemble",
    "empirical_real_fraction",
    "empirical_pair_correlation",
    "nearest_neighbor_spacings",
    "circular_gaps",
    "gap_ensemble",
]


def rescale_zeros(zeros, degree: int) -> np.ndarray:
    """Map sorted roots in [0, 2*pi) to [0, 2N): x -> N*x/pi."""
    return np.asarray(zeros, dtype=float) * (degree / np.pi)


@dataclass(frozen=True)
class Histogram:
    """Binned statistic with explicit edges and a normalization tag."""

    edges: np.ndarray
    values: np.ndarray
    normalization: str  # "raw" | "density" | "pair-correlation"

    def __post_init__(self):
        e = np.asarray(self.edges, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if len(e) != len(v) + 1:
            raise ValueError("edges must have one more entry than values")
        if np.any(np.diff(e) <= 0):
            raise ValueError("edges must be strictly increasing")
        object.__setattr__(self, "edges", e)
        object.__setattr__(self, "values", v)

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("bin_left,bin_right,value\n")
        for left, right, v in zip(self.edges[:-1], self.edges[1:], self.values):
            buf.write(f"{float(left)!r},{float(right)!r},{float(v)!r}\n")
        return buf.getvalue()


@dataclass(frozen=True)
class PairCorrelationEstimate:
    """Pair-correlation histogram plus the ensemble metadata that produced it."""

    histogram: Histogram
    metadata: dict = field(default_factory=dict)
    rescale: str = "unit-mean-spacing"

    def sidecar_json(self) -> str:
        return json.dumps(
            {"rescale": self.rescale, "metadata": self.metadata}, sort_keys=True, indent=2
        )


def _realization_rescaled_roots(spec: poly.EnsembleSpec, index: int, oversample: int):
    f = poly.sample(spec, index)
    if spec.derivative_order > 0:
        f = poly.derivative_rescaled(f, spec.derivative_order)
    rs = roots.real_roots_sampled(f, oversample=oversample)
    return rescale_zeros(rs.real_roots, spec.degree)


def _chunk_worker(args):
    spec, lo, hi, oversample = args
    return [_realization_rescaled_roots(spec, i, oversample) for i in range(lo, hi)]


def real_zero_ensemble(
    spec: poly.EnsembleSpec,
    oversample: int = roots.DEFAULT_OVERSAMPLE,
    threads: int = 1,
) -> list[np.ndarray]:
    """Rescaled real roots of F^(p) for every realization, in index order.

    With threads > 1 the realizations are processed in parallel worker
    processes; each realization is a pure function of (spec, index), and the
    returned list is always ordered by index, so the output is identical for
    any thread count.
    """
    M = spec.realizations
    if threads <= 1:
        return [_realization_rescaled_roots(spec, i, oversample) for i in range(M)]
    workers = min(threads, os.cpu_count() or 1, M)
    chunk = max(1, math.ceil(M / (4 * workers)))
    tasks = [(spec, lo, min(lo + chunk, M), oversample) for lo in range(0, M, chunk)]
    out: list[np.ndarray] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_chunk_worker, tasks):
            out.extend(part)
    return out


def empirical_real_fraction(
    spec: poly.EnsembleSpec,
    oversample: int = roots.DEFAULT_OVERSAMPLE,
    threads: int = 1,
    rootsets: list[np.ndarray] | None = None,
) -> tuple[float, float]:
    """Monte Carlo mean and standard error of the real-zero fraction."""
    if spec.realizations < 2:
        raise ValueError("need at least 2 realizations for a standard error")
    if rootsets is None:
        rootsets = real_zero_ensemble(spec, oversample=oversample, threads=threads)
    fracs = np.array([len(r) / (2.0 * spec.degree) for r in rootsets])
    return float(fracs.mean()), float(fracs.std(ddof=1) / math.sqrt(len(fracs)))


def empirical_pair_correlation(
    rootsets: list[np.ndarray],
    degree: int,
    bin_width: float = 0.05,
    max_range: float = 6.0,
    metadata: dict | None = None,
) -> PairCorrelationEstimate:
    """Histogram estimate of the pair correlation of rescaled real zeros.

    Counts ordered pairs (i != j) whose circular difference mod 2N falls in
    [0, max_range), then divides each bin count by (M * 2N * bin_width).
    For an uncorrelated point process of density v the estimate converges
    to v*v in every bin; for the zero process the plateau is the squared
    density of real zeros.
    """
    if not rootsets:
        raise ValueError("empty ensemble")
    if bin_width <= 0:
        raise ValueError("bin_width must be positive")
    if bin_width >= max_range:
        raise ValueError("bin_width must be smaller than max_range")
    if max_range > degree:
        raise ValueError("max_range cannot exceed the half period N")
    period = 2.0 * degree
    nbins = int(round(max_range / bin_width))
    if abs(nbins * bin_width - max_range) > 1e-9 * max_range:
        nbins = int(math.floor(max_range / bin_width))
    edges = np.arange(nbins + 1) * bin_width
    counts = np.zeros(nbins, dtype=np.int64)
    top = nbins * bin_width
    for r in rootsets:
        k = len(r)
        if k < 2:
            continue
        ext = np.concatenate([r, r + period])
        hi = np.searchsorted(ext, r + top, side="left")
        lo = np.arange(k) + 1
        lens = hi - lo
        total = int(lens.sum())
        if total == 0:
            continue
        starts = np.repeat(lo, lens)
        offsets = np.arange(total) - np.repeat(np.cumsum(lens) - lens, lens)
        diffs = ext[starts + offsets] - np.repeat(r, lens)
        idx = (diffs / bin_width).astype(np.int64)
        idx = idx[idx < nbins]  # guard rounding exactly onto the top edge
        counts += np.bincount(idx, minlength=nbins)
    M = len(rootsets)
    values = counts / (M * period * bin_width)
    hist = Histogram(edges=edges, values=values, normalization="pair-correlation")
    meta = dict(metadata or {})
    meta.update({"realizations": M, "degree": degree, "bin_width": bin_width,
                 "max_range": top, "ordered_pairs": int(counts.sum())})
    return PairCorrelationEstimate(histogram=hist, metadata=meta)


def circular_gaps(zeros, period: float) -> np.ndarray:
    """Consecutive gaps of a sorted root list on a circle of given length."""
    r = np.asarray(zeros, dtype=float)
    if len(r) < 2:
        return np.empty(0)
    return np.concatenate([np.diff(r), [r[0] + period - r[-1]]])


def gap_ensemble(rootsets: list[np.ndarray], degree: int) -> np.ndarray:
    """All circular nearest-neighbor gaps of the ensemble, in index order."""
    period = 2.0 * degree
    parts = [circular_gaps(r, period) for r in rootsets]
    parts = [p for p in parts if len(p)]
    if not parts:
        raise ValueError("no realization contributed two or more roots")
    return np.concatenate(parts)


def nearest_neighbor_spacings(
    rootsets: list[np.ndarray],
    degree: int,
    bin_width: float = 0.05,
    max_range: float = 6.0,
) -> Histogram:
    """Density-normalized histogram of consecutive circular gaps.

    Realizations with fewer than two roots contribute no gaps.  The values
    integrate to 1 over the histogram support.
    """
    gaps = gap_ensemble(rootsets, degree)
    nbins = int(round(max_range / bin_width))
    edges = np.arange(nbins + 1) * bin_width
    counts, _ = np.histogram(gaps, bins=edges)
    in_range = counts.sum()
    if in_range == 0:
        raise ValueError("no gaps fall inside the histogram range")
    values = counts / (in_range * bin_width)
    return Histogram(edges=edges, values=values, normalization="density")
