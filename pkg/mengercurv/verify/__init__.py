from mengercurv.verify.codivergence import classify, codivergence_probe, default_schedule
from mengercurv.verify.equivalence import (
    equivalence_experiment,
    equivalence_stability,
    pooled,
)
from mengercurv.verify.lemmas import (
    check_lemma_beta,
    estimate_ball_density,
    estimate_w_measure,
    laplace_identity_audit,
    laplace_identity_check,
    random_tuples,
)
from mengercurv.verify.probes import graph_energy_comparison, kernel_circle_probe
from mengercurv.verify.render import format_cell, render_result, render_table
from mengercurv.verify.schemes import (
    CircleProbeRow,
    CodivergenceReport,
    LemmaBetaReport,
    RatioReport,
    RatioRow,
    ScanSummary,
    StabilityReport,
)
