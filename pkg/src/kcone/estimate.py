"""Volume estimates and reproducible Monte-Carlo plumbing."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import InvalidArgument

__all__ = ["VolumeEstimate", "split_streams", "mc_fraction", "DEFAULT_CHUNK"]

DEFAULT_CHUNK = 1 << 16


@dataclass(frozen=True)
class VolumeEstimate:
    """A volume together with its error descriptor.

    ``method`` is ``"quadrature"`` (``error`` is the quadrature error
    estimate), ``"closed_form"`` (``error`` is a rounding allowance) or
    ``"mc"`` (``error`` is one standard error over ``samples`` draws).
    """

    value: float
    error: float
    method: str
    samples: Optional[int] = None

    def __float__(self):
        return float(self.value)

    def agrees_with(self, other: float, sigmas: float = 4.0, floor: float = 0.0) -> bool:
        return abs(self.value - float(other)) <= sigmas * self.error + floor

    def __sub__(self, other: "VolumeEstimate") -> "VolumeEstimate":
        method = self.method if self.method == other.method else "mixed"
        return VolumeEstimate(self.value - other.value, self.error + other.error, method)


def split_streams(seed, n: int) -> list[np.random.Generator]:
    """Independent generators for ``n`` chunks.

    Split rule: chunk ``i`` draws from ``SeedSequence(seed).spawn(n)[i]``
    (or ``Generator.spawn(n)[i]`` when a generator is passed), so results do
    not depend on how chunks are scheduled across workers.
    """
    if isinstance(seed, np.random.Generator):
        return seed.spawn(n)
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(seed)
    return [np.random.default_rng(s) for s in seed.spawn(n)]


def mc_fraction(
    draw_and_test: Callable[[np.random.Generator, int], np.ndarray],
    samples: int,
    seed=None,
    chunk: int = DEFAULT_CHUNK,
    workers: int = 1,
) -> tuple[float, float]:
    """Hit fraction and its standard error.

    ``draw_and_test(rng, k)`` draws ``k`` samples and returns a boolean hit
    array.  Per-chunk hit counts are summed in chunk order.
    """
    samples = int(samples)
    if samples <= 0:
        raise InvalidArgument("sample count must be positive")
    sizes = [chunk] * (samples // chunk)
    if samples % chunk:
        sizes.append(samples % chunk)
    streams = split_streams(seed, len(sizes))

    def run(job):
        rng, k = job
        return int(np.count_nonzero(draw_and_test(rng, k)))

    jobs = list(zip(streams, sizes))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = list(pool.map(run, jobs))
    else:
        hits = [run(j) for j in jobs]
    p = sum(hits) / samples
    return p, math.sqrt(max(p * (1.0 - p), 0.0) / samples)
