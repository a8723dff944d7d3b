from mengercurv.seminorms.affine import (
    best_affine_fit,
    cube_residual_moments,
    omega,
    omega_batch,
)
from mengercurv.seminorms.dorronsoro import dorronsoro_seminorm, tail_bound
from mengercurv.seminorms.gagliardo import gagliardo_seminorm
from mengercurv.seminorms.schemes import AffineFit, OmegaConfig
from mengercurv.seminorms.second_difference import second_diff_seminorm, second_difference
