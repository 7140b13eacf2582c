import os

from pydantic import BaseModel, ConfigDict, Field

from .errors import InvalidSetting

TOLERANCE_ENV_VAR = "METGRAPH_TOL"


class Tolerances(BaseModel):
    """Absolute tolerances used across the library.

    Graphs are assumed to have total length of order one; callers working at
    other scales should pass scaled tolerances explicitly.
    """

    model_config = ConfigDict(frozen=True)

    point: float = Field(default=1e-12, description="Point equality and endpoint snapping")
    atom: float = Field(default=1e-12, description="Atoms lighter than this are dropped")
    continuity: float = Field(default=1e-9, description="Vertex continuity of functions")
    mass: float = Field(default=1e-9, description="Zero-total-mass check for Meas_0")
    residual: float = Field(default=1e-9, description="Post-solve residual bound")
    measure: float = Field(default=1e-9, description="Measure equality")
    verdict: float = Field(default=1e-9, description="PASS/FAIL gate for CLI reports")

    @classmethod
    def from_env(cls, base: "Tolerances | None" = None) -> "Tolerances":
        """
        Build tolerances with the verdict tolerance taken from ``METGRAPH_TOL``.

        Parameters
        ----------
        base : Tolerances | None, optional
            Tolerances to start from. Default is DEFAULT_TOLERANCES.

        Returns
        -------
        Tolerances
            ``base`` unchanged when the variable is unset.

        Examples
        --------
        >>> os.environ["METGRAPH_TOL"] = "1e-6"
        >>> Tolerances.from_env().verdict
        1e-06
        """
        base = base or DEFAULT_TOLERANCES
        raw = os.environ.get(TOLERANCE_ENV_VAR)
        if raw is None or not raw.strip():
            return base
        return base.with_verdict(parse_tolerance(raw, TOLERANCE_ENV_VAR))

    def with_verdict(self, verdict: float) -> "Tolerances":
        """Return a copy with a different verdict tolerance."""
        return self.model_copy(update={"verdict": verdict})


class SpectrumSettings(BaseModel):
    """Defaults for the eigenfunction discretization."""

    model_config = ConfigDict(frozen=True)

    step: float = Field(default=1 / 200, description="Fine-mesh step per unit length")
    terms: int = Field(default=50, description="Number of eigenpairs to compute")


class OutputSettings(BaseModel):
    """Formatting of numbers in reports and CSV output."""

    model_config = ConfigDict(frozen=True)

    significant_digits: int = 12


DEFAULT_TOLERANCES = Tolerances()
DEFAULT_SPECTRUM_SETTINGS = SpectrumSettings()
DEFAULT_OUTPUT_SETTINGS = OutputSettings()


def parse_tolerance(raw: str, source: str = "tolerance") -> float:
    """
    Parse a positive tolerance value.

    Parameters
    ----------
    raw : str
        Text to parse.
    source : str, optional
        Name used in the error message.

    Returns
    -------
    float
    """
    try:
        value = float(raw)
    except ValueError:
        raise InvalidSetting(f"{source} must be a number, got {raw!r}")
    if not value > 0 or value == float("inf"):
        raise InvalidSetting(f"{source} must be positive and finite, got {raw!r}")
    return value
