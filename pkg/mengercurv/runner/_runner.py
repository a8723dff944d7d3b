from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, TypeVar
import sys

T = TypeVar("T")


class AbstractBaseRunner(ABC):
    """
    Abstract class for running chunked computations on a worker pool.
    """

    @classmethod
    @abstractmethod
    def run(
        cls, task: Callable[[int], T], n_chunks: int, threads: int = 1
    ) -> List[T]:
        """
        Runs `task` on every chunk index.

        :param task: Pure function of the chunk index.
        :param n_chunks: Number of chunks.
        :param threads: Worker count; affects wall time only.
        :return: The chunk results ordered by chunk index.
        """
        pass

    @classmethod
    def _send_chunks(
        cls,
        task: Callable[[int], T],
        n_chunks: int,
        threads: int,
    ) -> List[T]:
        """
        Dispatches the chunks.

        :param task: Pure function of the chunk index.
        :param n_chunks: Number of chunks.
        :param threads: Worker count.
        :return: The chunk results ordered by chunk index.
        :raises ValueError: If the worker count is not positive.
        """
        if threads < 1:
            raise ValueError(f"Unsupported worker count: {threads}")

        try:
            if threads == 1 or n_chunks <= 1:
                return [task(index) for index in range(n_chunks)]

            with ThreadPoolExecutor(max_workers=threads) as pool:
                # map keeps submission order, which fixes the reduction order
                return list(pool.map(task, range(n_chunks)))
        except KeyboardInterrupt:
            print("User interrupt. Exiting.")
            sys.exit()
