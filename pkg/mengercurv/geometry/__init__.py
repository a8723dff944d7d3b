from mengercurv.geometry.kernels import (
    COLLINEAR_TOL,
    INVALID_SAMPLE,
    circumradius,
    diameter,
    diameter_batch,
    is_invalid_sample,
    k_kernel,
    k_kernel_batch,
    k_pq_kernel,
    k_pq_kernel_batch,
    menger_curvature,
    simplex_volume,
    simplex_volume_batch,
    wedge_norm,
    wedge_norm_batch,
)
from mengercurv.geometry.schemes import AffineMap, PointTuple
