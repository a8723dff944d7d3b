from typing import Callable, List, TypeVar

from loguru import logger

from mengercurv.core.exceptions import MengerError
from mengercurv.runner._runner import AbstractBaseRunner
from mengercurv.runner.exceptions import ComputeError

T = TypeVar("T")


class ChunkRunner(AbstractBaseRunner):
    """
    Runs chunked estimator work, handles errors, and logs progress.

    Results come back in chunk order whatever the worker count, so reductions
    performed by the caller are reproducible bit for bit.
    """

    @classmethod
    def run(
        cls,
        task: Callable[[int], T],
        n_chunks: int,
        threads: int = 1,
        label: str = "chunks",
    ) -> List[T]:
        """
        Run every chunk and return the ordered results.

        Args:
            task (Callable[[int], T]): Pure function of the chunk index.
            n_chunks (int): Number of chunks.
            threads (int, optional): Worker count (default is 1).
            label (str, optional): Name used in log lines.

        Returns:
            List[T]: One result per chunk, in chunk order.

        Raises:
            ComputeError: If a chunk fails with an unexpected exception.
        """

        def guarded(index: int) -> T:
            try:
                return task(index)
            except MengerError:
                raise
            except Exception as e:
                __error_msg = (
                    f"Error during {label}: chunk {index}: {type(e).__name__}: {e}"
                )
                raise ComputeError(__error_msg) from e

        logger.info(f"Trying to run {label}: {n_chunks} chunks on {threads} threads")

        try:
            results = cls._send_chunks(task=guarded, n_chunks=n_chunks, threads=threads)
        except ComputeError as e:
            logger.critical(e.message)
            raise

        logger.success(f"Finished {label}: {n_chunks} chunks")
        return results
