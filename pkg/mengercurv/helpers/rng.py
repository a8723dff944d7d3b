"""Counter-based random draws.

Draw ``j`` of sample ``i`` is 64-bit word ``i * J + j`` of a Philox stream
keyed by the seed, where ``J`` is the per-sample draw count padded to a
multiple of four (Philox emits four words per counter step). Any chunk of
samples can therefore be regenerated independently, which is what makes
estimates identical under every parallel schedule and lets two integrands
share one sample stream.
"""

import numpy as np
from scipy.special import ndtri

from mengercurv.core.exceptions import ArgumentError

# Generator.random() returns k / 2^53 for integer k in [0, 2^53)
_WORDS = 2.0**53
_MAX_SEED = 2**64


def open_unit(words: np.ndarray) -> np.ndarray:
    """
    Maps [0, 1) doubles on the 2^-53 grid into (0, 1).

    k / 2^53 goes to (k·(2^53 − 1)/2^53 + 1/2) / 2^53, which rounds to at most
    (2^53 − 1) / 2^53, so neither end of the interval is reached.
    """
    return (words * (_WORDS - 1.0) + 0.5) / _WORDS



class CounterStream:
    """
    Addressable uniform draws for Monte-Carlo estimators.

    Attributes:
        seed: 64-bit non-negative seed.
        draws: Draws used per sample.
        stride: Words reserved per sample (multiple of 4).
    """

    def __init__(self, seed: int, draws: int):
        if not 0 <= int(seed) < _MAX_SEED:
            raise ArgumentError(f"seed must be a 64-bit non-negative integer, got {seed}")
        if draws < 1:
            raise ArgumentError("a sample needs at least one draw")

        self.seed = int(seed)
        self.draws = int(draws)
        self.stride = -(-self.draws // 4) * 4

    def uniforms(self, start: int, count: int) -> np.ndarray:
        """
        Open-interval uniforms for samples ``start .. start + count - 1``.

        :param start: Index of the first sample.
        :param count: Number of samples.
        :return: Array of shape (count, draws) with entries in (0, 1).
        """
        bit_generator = np.random.Philox(key=self.seed)
        bit_generator.advance(start * self.stride // 4)
        words = np.random.Generator(bit_generator).random((count, self.stride))
        return open_unit(words[:, : self.draws])

    def block(self, start: int, count: int) -> "DrawBlock":
        """Wraps `uniforms` in a cursor that hands out draws column by column."""
        return DrawBlock(self.uniforms(start, count), start)


class DrawBlock:
    """
    Sequential reader over a (count, draws) uniform block.

    Consumers take columns in a fixed order, so the column index of every
    draw, and with it its word in the stream, is fixed by the code path.
    """

    def __init__(self, uniforms: np.ndarray, start: int = 0):
        self._u = uniforms
        self._cursor = 0
        self.start = start

    @property
    def count(self) -> int:
        return self._u.shape[0]

    @property
    def indices(self) -> np.ndarray:
        """Global sample indices of the rows."""
        return self.start + np.arange(self.count)

    def take(self, k: int = 1) -> np.ndarray:
        """Next ``k`` uniform columns, shape (count, k)."""
        end = self._cursor + k
        if end > self._u.shape[1]:
            raise ArgumentError(
                f"sample layout needs more than {self._u.shape[1]} draws per sample"
            )
        out = self._u[:, self._cursor : end]
        self._cursor = end
        return out

    def normals(self, k: int) -> np.ndarray:
        """Next ``k`` standard normal columns via the inverse normal CDF."""
        return ndtri(self.take(k))

    def ball(self, dimension: int, radius) -> np.ndarray:
        """
        Uniform points in the centered ball of the given radius.

        Uses ``dimension + 1`` draws: a normal direction and a radial draw.

        :param dimension: Ambient dimension.
        :param radius: Scalar or per-sample radii of shape (count,).
        :return: Array of shape (count, dimension).
        """
        direction = self.normals(dimension)
        norms = np.linalg.norm(direction, axis=1, keepdims=True)
        radial = self.take(1) ** (1.0 / dimension)
        return direction / norms * radial * np.reshape(radius, (-1, 1))

    def sphere(self, dimension: int) -> np.ndarray:
        """Uniform unit directions, ``dimension`` draws."""
        direction = self.normals(dimension)
        return direction / np.linalg.norm(direction, axis=1, keepdims=True)


def chunk_bounds(samples: int, chunk_size: int) -> list:
    """Fixed (start, count) pairs covering ``samples``; independent of threads."""
    return [
        (start, min(chunk_size, samples - start))
        for start in range(0, samples, chunk_size)
    ]
