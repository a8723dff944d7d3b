import numpy as np
import pytest

from mengercurv.core.exceptions import ArgumentError
from mengercurv.helpers import CounterStream, DrawBlock, chunk_bounds
from mengercurv.helpers.montecarlo import mean_estimate, sample_stream
from mengercurv.helpers.rng import open_unit
from mengercurv.runner import ChunkRunner
from mengercurv.runner.exceptions import ComputeError


def test_block_matches_slice_of_larger_block():
    stream = CounterStream(seed=11, draws=5)
    whole = stream.uniforms(0, 100)
    part = stream.uniforms(37, 20)
    assert np.array_equal(part, whole[37:57])


def test_uniforms_stay_inside_open_interval():
    u = CounterStream(seed=3, draws=4).uniforms(0, 10_000)
    assert u.min() > 0.0
    assert u.max() < 1.0


def test_extreme_words_map_strictly_inside_the_unit_interval():
    words = np.array([[0.0, 2.0**-53, 0.5, 1.0 - 2.0**-53]])
    u = open_unit(words)
    assert np.all(u > 0.0)
    assert np.all(u < 1.0)

    block = DrawBlock(np.repeat(u[:, [0, -1, -1]], 2, axis=0))
    points = block.ball(2, 1.0)
    assert np.all(np.isfinite(points))


def test_different_seeds_give_different_draws():
    a = CounterStream(seed=1, draws=2).uniforms(0, 16)
    b = CounterStream(seed=2, draws=2).uniforms(0, 16)
    assert not np.array_equal(a, b)


@pytest.mark.parametrize("seed", [-1, 2**64])
def test_seed_outside_64_bits_is_rejected(seed):
    with pytest.raises(ArgumentError):
        CounterStream(seed=seed, draws=1)


def test_draw_block_hands_out_columns_in_order():
    uniforms = np.arange(12, dtype=float).reshape(3, 4) / 12.0 + 0.01
    block = DrawBlock(uniforms, start=5)
    assert np.array_equal(block.take(1)[:, 0], uniforms[:, 0])
    assert np.array_equal(block.take(2), uniforms[:, 1:3])
    assert list(block.indices) == [5, 6, 7]
    with pytest.raises(ArgumentError):
        block.take(2)


def test_ball_points_stay_inside_radius():
    block = CounterStream(seed=5, draws=4).block(0, 4096)
    points = block.ball(3, 2.0)
    assert np.all(np.linalg.norm(points, axis=1) < 2.0)


def test_chunk_bounds_cover_every_sample_once():
    bounds = chunk_bounds(20_001, 8192)
    assert bounds == [(0, 8192), (8192, 8192), (16384, 3617)]


def test_runner_keeps_chunk_order_with_many_threads():
    results = ChunkRunner.run(lambda index: index * index, n_chunks=40, threads=8)
    assert results == [index * index for index in range(40)]


def test_runner_wraps_unexpected_errors():
    def task(index):
        if index == 3:
            raise ZeroDivisionError("boom")
        return index

    with pytest.raises(ComputeError) as error:
        ChunkRunner.run(task, n_chunks=5, threads=2, label="test chunks")
    assert "chunk 3" in error.value.message
    assert isinstance(error.value.__cause__, ZeroDivisionError)


def test_runner_passes_library_errors_through():
    def task(index):
        raise ArgumentError("bad input")

    with pytest.raises(ArgumentError):
        ChunkRunner.run(task, n_chunks=2, threads=1)


def test_runner_rejects_zero_workers():
    with pytest.raises(ValueError):
        ChunkRunner.run(lambda index: index, n_chunks=2, threads=0)


@pytest.mark.parametrize("threads", [2, 4, 8])
def test_sample_stream_is_bit_identical_across_threads(threads):
    def kernel(block):
        u = block.take(2)
        return u[:, 0] * np.sin(u[:, 1])

    (reference,) = sample_stream(kernel, 50_000, 2, seed=17, threads=1, chunk_size=4096)
    (parallel,) = sample_stream(kernel, 50_000, 2, seed=17, threads=threads, chunk_size=4096)
    assert np.array_equal(reference, parallel)
    first = mean_estimate(reference, seed=17)
    second = mean_estimate(parallel, seed=17)
    assert first.value == second.value
    assert first.stderr == second.stderr


def test_mean_estimate_of_constant_has_zero_error():
    estimate = mean_estimate(np.full(100, 2.5), seed=0, scale=2.0)
    assert estimate.value == 5.0
    assert estimate.stderr == 0.0
    assert estimate.relative_error == 0.0
