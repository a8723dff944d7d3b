"""Function models from files.

Grid CSV: a header ``x_1,...,x_n,f`` and one row per node in row-major order
(last coordinate fastest) on a uniform grid. JSON descriptors name catalog
functions with their parameters, either as one object or as
``{"functions": [...]}``.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Union

import numpy as np
from pydantic import BaseModel, Field, ValidationError

from mengercurv.core.exceptions import ArgumentError
from mengercurv.funcspace.catalog import test_function
from mengercurv.funcspace.models import FunctionModel, GridFunction

GRID_CSV = "grid-csv"


def load_grid_csv(path: Union[str, Path]) -> GridFunction:
    """
    :raises ArgumentError: On a malformed header, ragged or non-uniform grid.
    """
    path = Path(path)
    with path.open() as handle:
        header = [column.strip() for column in handle.readline().split(",")]
    if len(header) < 2 or header[-1] != "f":
        raise ArgumentError(f"{path}: header must read x_1,...,x_n,f")

    try:
        table = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    except ValueError as e:
        raise ArgumentError(f"{path}: {e}") from e
    if table.shape[1] != len(header):
        raise ArgumentError(f"{path}: expected {len(header)} columns")

    n = len(header) - 1
    axes = [np.unique(table[:, i]) for i in range(n)]
    shape = tuple(len(axis) for axis in axes)
    if int(np.prod(shape)) != table.shape[0]:
        raise ArgumentError(f"{path}: rows do not form a full grid")

    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n)
    if not np.array_equal(mesh, table[:, :n]):
        raise ArgumentError(f"{path}: rows are not in row-major grid order")
    for axis in axes:
        steps = np.diff(axis)
        if not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
            raise ArgumentError(f"{path}: grid spacing is not uniform")

    return GridFunction(axes, table[:, n].reshape(shape), name=path.stem)


class FunctionDescriptor(BaseModel):
    """A catalog name plus builder parameters, or a grid CSV path."""

    name: str = Field(..., description="Catalog name, or 'grid-csv'")
    params: Dict[str, Any] = Field(default_factory=dict)

    def build(self) -> FunctionModel:
        if self.name == GRID_CSV:
            if "path" not in self.params:
                raise ArgumentError("grid-csv descriptors need params.path")
            return load_grid_csv(self.params["path"])
        return test_function(self.name, self.params)


def load_function_descriptors(path: Union[str, Path]) -> List[FunctionModel]:
    """
    :raises ArgumentError: On invalid JSON or descriptors.
    """
    try:
        document = json.loads(Path(path).read_text())
        entries = document["functions"] if "functions" in document else [document]
        descriptors = [FunctionDescriptor.model_validate(entry) for entry in entries]
    except (json.JSONDecodeError, TypeError, ValidationError) as e:
        raise ArgumentError(f"{path}: invalid function descriptor: {e}") from e
    return [descriptor.build() for descriptor in descriptors]
