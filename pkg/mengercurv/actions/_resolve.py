"""Turns RunConfig fields into domain objects shared by the actions."""

from typing import List, Optional

import numpy as np

from mengercurv.cli.schemes import RunConfig
from mengercurv.core.exceptions import ConfigError, MengerError
from mengercurv.energy.schemes import SamplerConfig
from mengercurv.funcspace.domain import Domain
from mengercurv.funcspace.models import FunctionModel
from mengercurv.helpers.descriptors import (
    parse_catalog,
    parse_domain,
    parse_function,
    parse_vector,
)


def _field(name: str, parse, *args):
    try:
        return parse(*args)
    except MengerError as e:
        raise ConfigError(e.message, name) from e


def resolve_domain(config: RunConfig) -> Domain:
    return _field("domain", parse_domain, config.domain)


def resolve_functions(config: RunConfig, n: int) -> List[FunctionModel]:
    if not config.fn:
        raise ConfigError("at least one function descriptor is required", "fn")
    return [_field("fn", parse_function, text, n) for text in config.fn]


def resolve_function(config: RunConfig, n: int) -> FunctionModel:
    functions = resolve_functions(config, n)
    if len(functions) != 1:
        raise ConfigError("exactly one function descriptor is expected", "fn")
    return functions[0]


def resolve_catalog(config: RunConfig, n: int, domain: Domain) -> List[FunctionModel]:
    """Explicit ``--fn`` descriptors win over ``--catalog``."""
    if config.fn:
        return resolve_functions(config, n)
    return _field("catalog", parse_catalog, config.catalog, n, domain)


def resolve_point(config: RunConfig, n: int) -> Optional[np.ndarray]:
    if config.point is None:
        return None
    point = _field("point", parse_vector, config.point)
    if point.shape != (n,):
        raise ConfigError(f"expected {n} coordinates", "point")
    return point


def sampler_config(config: RunConfig) -> SamplerConfig:
    options = {"mode": config.sampler, "r_min": config.r_min}
    if config.strata is not None:
        options["strata"] = config.strata
    return SamplerConfig(**options)


def samples_or(config: RunConfig, default: int) -> int:
    return default if config.samples is None else config.samples
