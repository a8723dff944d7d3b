from mengercurv.core.exceptions import MengerError


class ComputeError(MengerError):
    """
    Raised when a worker chunk fails for a reason that is not an argument error.

    The message names the chunk and the original exception, which is chained
    as the cause.
    """
