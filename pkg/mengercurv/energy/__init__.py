from mengercurv.core.schemes import Estimate
from mengercurv.energy.graph import graph_energy_mc
from mengercurv.energy.monte_carlo import (
    SampleStream,
    energy_pq_mc,
    energy_pq_mc_truncated,
    energy_samples,
)
from mengercurv.energy.quadrature import energy_pq_quadrature_1d
from mengercurv.energy.sampler import StratifiedTupleSampler, UniformTupleSampler
from mengercurv.energy.scaling import energy_scaling_probe
from mengercurv.energy.schemes import SamplerConfig, ScalingReport
