"""Named test functions.

Every builder takes the dimension ``n`` plus its own keyword parameters and
returns an immutable model with its smoothness class recorded.
"""

from typing import Any, Callable, Dict, Optional

import numpy as np

from mengercurv.core.exceptions import ArgumentError
from mengercurv.funcspace.models import AnalyticFunction, FunctionModel, GridFunction

_REGISTRY: Dict[str, Callable[..., FunctionModel]] = {}


def _register(name: str):
    def decorator(builder):
        _REGISTRY[name] = builder
        return builder

    return decorator


def _vector(value, n: int) -> np.ndarray:
    return np.broadcast_to(np.asarray(value, dtype=float), (n,)).copy()


@_register("affine")
def affine(n: int = 1, slope=1.0, intercept: float = 0.0) -> AnalyticFunction:
    """x ↦ slope·x + intercept."""
    a = _vector(slope, n)
    b = float(intercept)
    return AnalyticFunction(
        "affine",
        n,
        rule=lambda x: x @ a + b,
        gradient_rule=lambda x: np.broadcast_to(a, x.shape).copy(),
        smoothness="C^inf",
    )


@_register("quadratic")
def quadratic(n: int = 1, coefficient: float = 1.0, center=0.0) -> AnalyticFunction:
    """x ↦ c·|x − center|²."""
    c = float(coefficient)
    x0 = _vector(center, n)
    return AnalyticFunction(
        "quadratic",
        n,
        rule=lambda x: c * np.sum((x - x0) ** 2, axis=-1),
        gradient_rule=lambda x: 2.0 * c * (x - x0),
        smoothness="C^inf",
    )


@_register("gaussian-bump")
def gaussian_bump(
    n: int = 1, center=0.5, width: float = 0.15, amplitude: float = 1.0
) -> AnalyticFunction:
    """amplitude · exp(−|x − center|² / (2 width²))."""
    x0 = _vector(center, n)
    w2 = float(width) ** 2
    a = float(amplitude)

    def rule(x):
        return a * np.exp(-np.sum((x - x0) ** 2, axis=-1) / (2.0 * w2))

    return AnalyticFunction(
        "gaussian-bump",
        n,
        rule=rule,
        gradient_rule=lambda x: -rule(x)[..., None] * (x - x0) / w2,
        smoothness="C^inf",
    )


@_register("compact-bump")
def compact_bump(
    n: int = 1, center=0.5, radius: float = 0.3, amplitude: float = 1.0
) -> AnalyticFunction:
    """amplitude · exp(1 − 1/(1 − |x − center|²/radius²)) inside the ball, 0 outside."""
    x0 = _vector(center, n)
    r = float(radius)
    a = float(amplitude)

    def inside(x):
        rho2 = np.sum((x - x0) ** 2, axis=-1) / r**2
        return rho2, rho2 < 1.0

    def rule(x):
        rho2, mask = inside(x)
        safe = np.where(mask, 1.0 - rho2, 1.0)
        return np.where(mask, a * np.exp(1.0 - 1.0 / safe), 0.0)

    def gradient_rule(x):
        rho2, mask = inside(x)
        safe = np.where(mask, 1.0 - rho2, 1.0)
        factor = np.where(mask, -rule(x) * 2.0 / (r**2 * safe**2), 0.0)
        return factor[..., None] * (x - x0)

    return AnalyticFunction(
        "compact-bump",
        n,
        rule=rule,
        gradient_rule=gradient_rule,
        smoothness="C^inf_c",
        support=(x0 - r, x0 + r),
    )


@_register("sine-pack")
def sine_pack(
    n: int = 1,
    center=0.5,
    width: float = 0.2,
    frequency: float = 3.0,
    amplitude: float = 1.0,
    envelope: str = "gaussian",
) -> AnalyticFunction:
    """
    An envelope times sin(2π·frequency·(x_1 − center_1)).

    ``envelope`` is "gaussian" (width is the standard deviation) or "compact"
    (width is the radius of a compact bump).
    """
    if envelope == "gaussian":
        carrier = gaussian_bump(n, center=center, width=width, amplitude=amplitude)
    elif envelope == "compact":
        carrier = compact_bump(n, center=center, radius=width, amplitude=amplitude)
    else:
        raise ArgumentError(f"unknown envelope {envelope!r}")
    x0 = _vector(center, n)
    k = 2.0 * np.pi * float(frequency)

    def rule(x):
        return carrier(x) * np.sin(k * (x[..., 0] - x0[0]))

    def gradient_rule(x):
        phase = k * (x[..., 0] - x0[0])
        grad = carrier.gradient(x) * np.sin(phase)[..., None]
        grad[..., 0] += carrier(x) * k * np.cos(phase)
        return grad

    return AnalyticFunction(
        "sine-pack",
        n,
        rule=rule,
        gradient_rule=gradient_rule,
        smoothness=carrier.smoothness,
        support=carrier.support,
    )


@_register("power-cusp")
def power_cusp(n: int = 1, alpha: float = 0.3, center=0.0) -> AnalyticFunction:
    """|x − center|^α, Hölder of order α at the center."""
    alpha = float(alpha)
    if alpha <= 0.0:
        raise ArgumentError("power-cusp needs alpha > 0")
    x0 = _vector(center, n)

    def gradient_rule(x):
        d = x - x0
        rho = np.linalg.norm(d, axis=-1, keepdims=True)
        with np.errstate(divide="ignore", invalid="ignore"):
            grad = alpha * rho ** (alpha - 2.0) * d
        return np.where(rho > 0.0, grad, 0.0)

    return AnalyticFunction(
        "power-cusp",
        n,
        rule=lambda x: np.linalg.norm(x - x0, axis=-1) ** alpha,
        gradient_rule=gradient_rule,
        smoothness="C^inf" if alpha.is_integer() and alpha % 2 == 0 else f"C^{{0,{alpha:g}}}",
    )


@_register("grid-sampled")
def grid_sampled(
    n: int = 1,
    base: str = "gaussian-bump",
    base_params: Optional[Dict[str, Any]] = None,
    lower=0.0,
    upper=1.0,
    nodes: int = 257,
) -> GridFunction:
    """Any catalog model tabulated on a uniform grid."""
    model = test_function(base, {"n": n, **(base_params or {})})
    return GridFunction.sample(model, _vector(lower, n), _vector(upper, n), nodes)


def catalog_names() -> list:
    return sorted(_REGISTRY)


def test_function(name: str, params: Optional[Dict[str, Any]] = None) -> FunctionModel:
    """
    Builds a catalog model.

    :param name: One of `catalog_names()`.
    :param params: Builder keywords, including the dimension ``n``.
    :raises ArgumentError: On an unknown name or unusable parameters.
    """
    try:
        builder = _REGISTRY[name]
    except KeyError:
        raise ArgumentError(
            f"unknown test function {name!r}; known: {', '.join(catalog_names())}"
        ) from None
    try:
        return builder(**(params or {}))
    except TypeError as e:
        raise ArgumentError(f"bad parameters for {name!r}: {e}") from e


# pytest would otherwise collect it when imported into a test module
test_function.__test__ = False


def default_catalog(n: int = 1, lower=0.0, upper=1.0) -> list:
    """The smooth four-function catalog, centered in the given box."""
    lower = _vector(lower, n)
    upper = _vector(upper, n)
    center = (lower + upper) / 2.0
    size = float(np.min(upper - lower))
    return [
        test_function("quadratic", {"n": n, "center": center}),
        test_function("gaussian-bump", {"n": n, "center": center, "width": 0.15 * size}),
        test_function("compact-bump", {"n": n, "center": center, "radius": 0.3 * size}),
        test_function(
            "sine-pack", {"n": n, "center": center, "width": 0.2 * size, "frequency": 1.5 / size}
        ),
    ]


def dorronsoro_catalog(n: int = 1, lower=0.0, upper=1.0) -> list:
    """Compactly supported smooth functions inside the given box."""
    lower = _vector(lower, n)
    upper = _vector(upper, n)
    center = (lower + upper) / 2.0
    size = float(np.min(upper - lower))
    return [
        test_function("compact-bump", {"n": n, "center": center, "radius": 0.3 * size}),
        test_function(
            "compact-bump",
            {"n": n, "center": lower + 0.4 * size, "radius": 0.15 * size},
        ),
        test_function(
            "sine-pack",
            {
                "n": n,
                "center": center,
                "width": 0.35 * size,
                "frequency": 1.5 / size,
                "envelope": "compact",
            },
        ),
    ]
