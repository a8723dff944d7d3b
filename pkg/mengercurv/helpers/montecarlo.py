"""Chunked sampling over a counter stream and the plain mean estimator."""

import math
from typing import Callable, Optional, Tuple, Union

import numpy as np
from loguru import logger

from mengercurv.core.schemes import Estimate
from mengercurv.helpers.rng import CounterStream, DrawBlock, chunk_bounds
from mengercurv.runner import ChunkRunner

CHUNK_SIZE = 8192

ChunkKernel = Callable[[DrawBlock], Union[np.ndarray, Tuple[np.ndarray, ...]]]


def sample_stream(
    kernel: ChunkKernel,
    samples: int,
    draws: int,
    seed: int,
    threads: int = 1,
    chunk_size: int = CHUNK_SIZE,
    label: str = "samples",
) -> Tuple[np.ndarray, ...]:
    """
    Evaluates ``kernel`` on fixed chunks of the stream and concatenates.

    The kernel receives the chunk's DrawBlock and returns one array, or a
    tuple of arrays, with one entry per sample. Outputs are concatenated in
    sample order, so any later reduction is independent of ``threads``.
    """
    samples = int(samples)
    stream = CounterStream(seed, draws)
    bounds = chunk_bounds(samples, chunk_size)

    def task(index: int) -> Tuple[np.ndarray, ...]:
        start, count = bounds[index]
        out = kernel(stream.block(start, count))
        return out if isinstance(out, tuple) else (out,)

    parts = ChunkRunner.run(task, len(bounds), threads=threads, label=label)
    return tuple(np.concatenate(column) for column in zip(*parts))


def mean_estimate(
    contributions: np.ndarray,
    seed: int,
    scale: float = 1.0,
    invalid: int = 0,
    acceptance_ratio: Optional[float] = None,
    mode: str = "monte-carlo",
    **details,
) -> Estimate:
    """scale · mean(contributions) with its standard error."""
    count = contributions.shape[0]
    value = scale * float(np.sum(contributions)) / count
    if count > 1:
        stderr = abs(scale) * float(np.std(contributions, ddof=1)) / math.sqrt(count)
    else:
        stderr = 0.0

    estimate = Estimate(
        value=value,
        stderr=stderr,
        samples=count,
        seed=seed,
        invalid_sample_count=invalid,
        acceptance_ratio=acceptance_ratio,
        mode=mode,
        details=details,
    )
    log_estimate(estimate)
    return estimate


def log_estimate(estimate: Estimate) -> None:
    logger.debug(
        f"{estimate.mode}: value={estimate.value:.6g} stderr={estimate.stderr:.3g} "
        f"samples={estimate.samples} seed={estimate.seed} "
        f"invalid={estimate.invalid_sample_count}"
    )
