# Distributed under the MIT License.
# See LICENSE for details.
"""
Defines class `Tolerance` and the precedence rules used to build one.

"""

import dataclasses
import math
import os

__all__ = ["Tolerance", "resolve_tolerance", "ENV_VARIABLES"]

# Field name -> environment variable.
ENV_VARIABLES = {
    "psd_eps": "MATMOMENT_TOL_PSD",
    "root_eps": "MATMOMENT_TOL_ROOT",
    "residual_eps": "MATMOMENT_TOL_RESIDUAL",
}


@dataclasses.dataclass(frozen=True)
class Tolerance:
    r"""
    Numerical tolerances shared by every decision procedure.

    Parameters
    ----------

    `psd_eps` : float (optional, default: 1e-9)
    Relative eigenvalue floor: a symmetric $M$ is PSD when its smallest
    eigenvalue is at least $-\epsilon \max(1, \|M\|_\infty)$.

    `root_eps` : float (optional, default: 1e-7)
    Radius used to cluster polynomial roots and to classify them as real.

    `residual_eps` : float (optional, default: 1e-9)
    Relative bound on recurrence, reconstruction and asymmetry residuals.

    """

    psd_eps: float = 1.e-9
    root_eps: float = 1.e-7
    residual_eps: float = 1.e-9

    def __post_init__(self):
        for field in dataclasses.fields(self):
            value = getattr(self, field.name)
            if not math.isfinite(value) or value < 0.:
                raise ValueError(
                    f"{field.name} must be finite and nonnegative, got {value}.")
            object.__setattr__(self, field.name, float(value))

    @classmethod
    def from_env(cls, environ=None):
        """
        Build a tolerance from the `MATMOMENT_TOL_*` environment variables,
        falling back to the defaults for unset ones.

        """
        environ = os.environ if environ is None else environ
        values = {}
        for name, variable in ENV_VARIABLES.items():
            raw = environ.get(variable)
            if raw is None or raw.strip() == "":
                continue
            try:
                values[name] = float(raw)
            except ValueError as err:
                raise ValueError(
                    f"{variable}={raw!r} is not a number.") from err
        return cls(**values)

    def updated(self, **overrides):
        """
        Return a copy with every non-`None` override applied.

        """
        unknown = set(overrides) - set(ENV_VARIABLES)
        if unknown:
            raise ValueError(f"Unknown tolerance fields: {sorted(unknown)}.")
        return dataclasses.replace(
            self, **{k: v for k, v in overrides.items() if v is not None})


def resolve_tolerance(flags=None, document=None, environ=None):
    """
    Combine tolerance sources with precedence
    flag > document > environment > default.

    Parameters
    ----------

    `flags`, `document` : dict or None
    Partial mappings from field name to value; `None` values are ignored.

    `environ` : mapping (optional, default: `os.environ`)
    The environment to read `MATMOMENT_TOL_*` from.

    Returns
    -------

    out : Tolerance

    """
    tol = Tolerance.from_env(environ)
    tol = tol.updated(**(document or {}))
    return tol.updated(**(flags or {}))
