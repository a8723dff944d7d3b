import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator


class AffineFit(BaseModel):
    """
    The affine function P_Q(x) = intercept + gradient·x matching the zeroth
    and first moments of f on the cube Q = center + [−side/2, side/2]^n.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    intercept: float
    gradient: np.ndarray
    center: np.ndarray
    side: float = Field(..., gt=0.0)

    @field_validator("gradient", "center", mode="before")
    @classmethod
    def as_vector(cls, value) -> np.ndarray:
        value = np.atleast_1d(np.asarray(value, dtype=float))
        if not np.all(np.isfinite(value)):
            raise ValueError("affine fit coefficients must be finite")
        return value

    @field_validator("intercept")
    @classmethod
    def finite_intercept(cls, value: float) -> float:
        if not np.isfinite(value):
            raise ValueError("affine fit coefficients must be finite")
        return value

    def __call__(self, points) -> np.ndarray:
        return self.intercept + np.asarray(points, dtype=float) @ self.gradient


class OmegaConfig(BaseModel):
    """
    Resolution of the finite search behind Ω_f(x, t).

    Attributes:
        offsets: Lattice points per axis for the cube's lower corner in [x − t, x].
        sup_grid: Grid points per axis on which |f − P_Q| is maximized.
        fit_order: Gauss–Legendre nodes per axis for the moment system.
    """

    model_config = ConfigDict(frozen=True)

    offsets: int = Field(default=5, ge=1)
    sup_grid: int = Field(default=17, ge=2)
    fit_order: int = Field(default=8, ge=2)
