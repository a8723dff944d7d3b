from mengercurv.curves.energies import (
    intermediate_energy_ip,
    kernel_energy_ep,
    menger_energy_mp,
    pair_kernels,
    sup_energy_up,
)
from mengercurv.curves.generators import circle, ellipse, load_polyline_csv, torus_knot
from mengercurv.curves.schemes import Polyline
