from pathlib import Path
from typing import Sequence, Union

import numpy as np

from mengercurv.core.exceptions import ArgumentError
from mengercurv.curves.schemes import Polyline


def _angles(count: int) -> np.ndarray:
    if count < 3:
        raise ArgumentError("a closed curve needs at least 3 vertices")
    return 2.0 * np.pi * np.arange(count) / count


def circle(count: int, radius: float = 1.0, center: Sequence[float] = (0.0, 0.0)) -> Polyline:
    """Regular ``count``-gon inscribed in the circle."""
    t = _angles(count)
    vertices = np.stack([np.cos(t), np.sin(t)], axis=1) * radius + np.asarray(center)
    return Polyline(vertices=vertices)


def ellipse(a: float, b: float, count: int) -> Polyline:
    t = _angles(count)
    return Polyline(vertices=np.stack([a * np.cos(t), b * np.sin(t)], axis=1))


def torus_knot(
    p: int, q: int, count: int, major: float = 2.0, minor: float = 1.0
) -> Polyline:
    """The (p, q) torus knot on the torus with radii ``major`` > ``minor``."""
    if not major > minor > 0.0:
        raise ArgumentError("need major > minor > 0")
    t = _angles(count)
    ring = major + minor * np.cos(q * t)
    vertices = np.stack(
        [ring * np.cos(p * t), ring * np.sin(p * t), minor * np.sin(q * t)], axis=1
    )
    return Polyline(vertices=vertices)


def load_polyline_csv(path: Union[str, Path], closed: bool = True) -> Polyline:
    """
    One vertex per row, comma separated; a non-numeric first row is a header.

    :raises ArgumentError: On unreadable rows or an invalid polyline.
    """
    path = Path(path)
    try:
        vertices = np.loadtxt(path, delimiter=",", ndmin=2)
    except ValueError:
        try:
            vertices = np.loadtxt(path, delimiter=",", ndmin=2, skiprows=1)
        except ValueError as e:
            raise ArgumentError(f"{path}: {e}") from e
    try:
        return Polyline(vertices=vertices, closed=closed)
    except ValueError as e:
        raise ArgumentError(f"{path}: {e}") from e
