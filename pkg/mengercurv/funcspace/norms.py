import numpy as np

from mengercurv.core.exceptions import ArgumentError
from mengercurv.core.schemes import Estimate
from mengercurv.funcspace.domain import Domain
from mengercurv.funcspace.models import FunctionModel
from mengercurv.helpers.montecarlo import mean_estimate, sample_stream
from mengercurv.helpers.quadrature import panel_rule, uniform_panels


def lp_norm(
    f: FunctionModel,
    domain: Domain,
    p: float,
    samples: int = 200_000,
    seed: int = 0,
    threads: int = 1,
    panels: int = 256,
) -> Estimate:
    """
    ‖f‖_{L^p(U)}^p.

    One-dimensional domains use composite Gauss–Legendre on ``panels``
    panels; higher dimensions sample U uniformly.
    """
    if p < 1.0:
        raise ArgumentError("p must be >= 1")
    if domain.dimension == 1:
        lower, upper = domain.bounding_box()
        x, w = panel_rule(uniform_panels(lower[0], upper[0], panels), order=8)
        value = float(np.sum(w * np.abs(f.on_line(x)) ** p))
        return Estimate(
            value=value,
            samples=x.size,
            deterministic=True,
            mode="quadrature",
        )

    def kernel(block):
        return np.abs(f(domain.sample(block))) ** p

    (values,) = sample_stream(
        kernel,
        samples,
        domain.draws_per_point(),
        seed,
        threads=threads,
        label="lp-norm",
    )
    return mean_estimate(values, seed, scale=domain.volume, mode="monte-carlo")