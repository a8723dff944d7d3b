from typing import Any, Dict, Optional

from mengercurv.core.client import AbstractMengerClient


class MengerClient(AbstractMengerClient):
    """
    Public execution context handed to actions and experiments.

    Actions never read the attributes one by one; they splat
    `execution_options()` into the estimator they call, so adding an
    execution setting touches this class only.
    """

    def __init__(
        self,
        threads: Optional[int] = None,
        debug: bool = False,
        degeneracy_tol: float = 1e-12,
    ):
        """
        Initializes the MengerClient.

        Args:
            threads (int, optional): Worker count. Defaults to $MENGER_THREADS or 1.
            debug (bool, optional): Whether to enable logging. Defaults to False.
            degeneracy_tol (float, optional): Flat-simplex tolerance. Defaults to 1e-12.
        """
        super().__init__(threads=threads, debug=debug, degeneracy_tol=degeneracy_tol)

    def execution_options(self) -> Dict[str, Any]:
        """
        Keyword arguments accepted by every Monte-Carlo estimator.

        Returns:
            Dict[str, Any]: `threads` and `degeneracy_tol`.
        """
        return {"threads": self.threads, "degeneracy_tol": self.degeneracy_tol}
