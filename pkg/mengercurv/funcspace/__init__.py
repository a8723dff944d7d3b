from mengercurv.funcspace.catalog import (
    catalog_names,
    default_catalog,
    dorronsoro_catalog,
    test_function,
)
from mengercurv.funcspace.domain import (
    AnyDomain,
    BallDomain,
    BoxDomain,
    Domain,
    HBox,
    unit_ball_volume,
    unit_sphere_area,
)
from mengercurv.funcspace.io import (
    FunctionDescriptor,
    load_function_descriptors,
    load_grid_csv,
)
from mengercurv.funcspace.models import AnalyticFunction, FunctionModel, GridFunction
from mengercurv.funcspace.norms import lp_norm
from mengercurv.funcspace.params import EnergyParams, derive_q, equal_exponent_s
