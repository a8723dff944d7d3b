"""
Textual descriptors used on the command line.

    domain    0,1 | box:0,0:1,1 | cube:2:0:1 | ball:0,0:1
    function  name[:key=value[:key=value...]]   e.g. gaussian-bump:width=0.1:center=0.5,0.5
    curve     circle:512 | ellipse:2,1:512 | torus:2,3:512 | csv:path.csv
    point     0.5,0.5
"""

import json
import re
from pathlib import Path
from typing import Any, Dict, List, Tuple

import numpy as np

from mengercurv.core.exceptions import ArgumentError
from mengercurv.curves.generators import circle, ellipse, load_polyline_csv, torus_knot
from mengercurv.curves.schemes import Polyline
from mengercurv.funcspace.catalog import default_catalog, dorronsoro_catalog
from mengercurv.funcspace.domain import BallDomain, BoxDomain, Domain
from mengercurv.funcspace.io import (
    GRID_CSV,
    FunctionDescriptor,
    load_function_descriptors,
)
from mengercurv.funcspace.models import FunctionModel

NUMBER = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
VECTOR = rf"{NUMBER}(?:,{NUMBER})*"

_INTERVAL = re.compile(rf"^({NUMBER}),({NUMBER})$")
_BOX = re.compile(rf"^box:({VECTOR}):({VECTOR})$")
_CUBE = re.compile(rf"^cube:(\d+):({NUMBER}):({NUMBER})$")
_BALL = re.compile(rf"^ball:({VECTOR}):({NUMBER})$")
_FUNCTION = re.compile(r"^([a-z][a-z0-9-]*)((?::[a-z_][a-z0-9_]*=[^:]*)*)$")
_CURVE = re.compile(r"^(circle|ellipse|torus|csv):(.+)$")


def parse_vector(text: str) -> np.ndarray:
    if not re.fullmatch(VECTOR, text.strip()):
        raise ArgumentError(f"not a comma-separated vector: {text!r}")
    return np.array([float(part) for part in text.split(",")])


def parse_domain(text: str) -> Domain:
    """
    Builds a domain from its descriptor.

    :raises ArgumentError: On an unrecognized descriptor or invalid bounds.
    """
    text = text.strip()
    try:
        if match := _INTERVAL.fullmatch(text):
            return BoxDomain.interval(float(match[1]), float(match[2]))
        if match := _BOX.fullmatch(text):
            return BoxDomain(lower=parse_vector(match[1]), upper=parse_vector(match[2]))
        if match := _CUBE.fullmatch(text):
            return BoxDomain.cube(int(match[1]), float(match[2]), float(match[3]))
        if match := _BALL.fullmatch(text):
            return BallDomain(center=parse_vector(match[1]), radius=float(match[2]))
    except ValueError as e:
        raise ArgumentError(f"invalid domain {text!r}: {e}") from e
    raise ArgumentError(f"unrecognized domain descriptor {text!r}")


def _value(text: str) -> Any:
    if re.fullmatch(VECTOR, text) and "," in text:
        return parse_vector(text).tolist()
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def parse_function_spec(text: str) -> Tuple[str, Dict[str, Any]]:
    """Splits ``name:key=value:...`` into the catalog name and its parameters."""
    match = _FUNCTION.fullmatch(text.strip())
    if match is None:
        raise ArgumentError(f"unrecognized function descriptor {text!r}")
    params = {}
    for item in filter(None, match[2].split(":")):
        key, _, raw = item.partition("=")
        params[key] = _value(raw)
    return match[1], params


def parse_function(text: str, n: int) -> FunctionModel:
    """
    Builds a catalog function; ``n`` fills in the dimension when it is omitted.

    :raises ArgumentError: On an unknown name, bad parameters or a dimension clash.
    """
    name, params = parse_function_spec(text)
    if name != GRID_CSV:
        params.setdefault("n", n)
    model = FunctionDescriptor(name=name, params=params).build()
    if model.dimension != n:
        raise ArgumentError(f"{text!r} has dimension {model.dimension}, expected {n}")
    return model


def parse_catalog(text: str, n: int, domain: Domain) -> List[FunctionModel]:
    """``default``, ``dorronsoro`` or a JSON file of function descriptors."""
    lower, upper = domain.bounding_box()
    if text == "default":
        return default_catalog(n, lower, upper)
    if text == "dorronsoro":
        return dorronsoro_catalog(n, lower, upper)
    path = Path(text)
    if not path.is_file():
        raise ArgumentError(f"catalog {text!r} is neither built in nor a file")
    return load_function_descriptors(path)


def parse_curve(text: str) -> Polyline:
    """
    :raises ArgumentError: On an unrecognized descriptor.
    """
    match = _CURVE.fullmatch(text.strip())
    if match is None:
        raise ArgumentError(f"unrecognized curve descriptor {text!r}")
    kind, rest = match[1], match[2]
    if kind == "csv":
        return load_polyline_csv(rest)
    parts = rest.split(":")
    try:
        if kind == "circle" and len(parts) in (1, 2):
            radius = float(parts[1]) if len(parts) == 2 else 1.0
            return circle(int(parts[0]), radius)
        if kind == "ellipse" and len(parts) == 2:
            a, b = parse_vector(parts[0])
            return ellipse(float(a), float(b), int(parts[1]))
        if kind == "torus" and len(parts) == 2:
            p, q = parse_vector(parts[0])
            return torus_knot(int(p), int(q), int(parts[1]))
    except ValueError as e:
        raise ArgumentError(f"invalid curve {text!r}: {e}") from e
    raise ArgumentError(f"unrecognized curve descriptor {text!r}")
