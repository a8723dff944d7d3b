import math
from typing import List, Sequence

import numpy as np

from mengercurv.core.exceptions import ArgumentError
from mengercurv.core.schemes import Estimate
from mengercurv.energy.graph import graph_energy_mc
from mengercurv.energy.monte_carlo import DEFAULT_SAMPLES, energy_pq_mc
from mengercurv.energy.schemes import SamplerConfig
from mengercurv.funcspace.domain import Domain
from mengercurv.funcspace.models import FunctionModel
from mengercurv.funcspace.params import EnergyParams, equal_exponent_s
from mengercurv.geometry.kernels import COLLINEAR_TOL, k_kernel, menger_curvature
from mengercurv.verify.schemes import CircleProbeRow


def kernel_circle_probe(ts: Sequence[float] = (0.5, 0.1, 0.01, 0.001)) -> List[CircleProbeRow]:
    """
    x = (1, 0) and y = (0, 1) on the unit circle, z at angle t past y.

    The Menger curvature stays 1 while 4K → 0 as z → y, so no inequality
    c ≤ C·4K can hold.
    """
    x = np.array([1.0, 0.0])
    y = np.array([0.0, 1.0])
    rows = []
    for t in ts:
        if not 0.0 < t < math.pi:
            raise ArgumentError("angles must lie in (0, π)")
        z = np.array([math.cos(math.pi / 2 + t), math.sin(math.pi / 2 + t)])
        rows.append(
            CircleProbeRow(
                t=float(t),
                curvature=menger_curvature(x, y, z),
                four_k=4.0 * k_kernel(np.stack([x, y, z]), n=1),
            )
        )
    return rows


def graph_energy_comparison(
    f: FunctionModel,
    domain: Domain,
    p: float,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    sampler: SamplerConfig = SamplerConfig(),
    threads: int = 1,
    degeneracy_tol: float = COLLINEAR_TOL,
) -> Estimate:
    """
    E_p(graph f) / E_{p,p}(f) from one coupled sample stream.

    E_{p,p} is E_{p,q} at the smoothness s for which q = p.

    :raises ArgumentError: Unless n(n+1) < p.
    """
    n = domain.dimension
    params = EnergyParams(n=n, s=equal_exponent_s(n, p), p=p)
    options = {"threads": threads, "degeneracy_tol": degeneracy_tol}
    graph = graph_energy_mc(f, domain, p, sampler, samples, seed, **options)
    energy = energy_pq_mc(f, domain, params, sampler, samples, seed, **options)
    if energy.value <= 0.0:
        raise ArgumentError(f"E_{{p,p}}({f.name}) vanishes; the ratio is undefined")
    ratio = graph.value / energy.value
    return Estimate(
        value=ratio,
        stderr=ratio * math.hypot(graph.relative_error, energy.relative_error),
        samples=graph.samples,
        seed=seed,
        mode="ratio",
        details={"graph_energy": graph.value, "energy_pp": energy.value, "s": params.s},
    )
