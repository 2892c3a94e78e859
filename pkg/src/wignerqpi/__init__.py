"""Spectra of disk and circle operators for Wigner quasiprobability integrals."""

__version__ = "0.1.0"

from .polyfn import (  # noqa: E402
    MeixnerConvention,
    MeixnerSpec,
    hermite_functions,
    hermite_normalized,
    laguerre,
    laguerre_all,
    laguerre_derivative,
    meixner,
    pochhammer,
)
from .quadrature import QuadratureSpec, QuadResult, ToleranceNotReached, integrate_1d, integrate_disk  # noqa: E402
from .spectra import (  # noqa: E402
    BoundsReport,
    FockWeights,
    RegionKind,
    Spectrum,
    bounds,
    circle_eigenvalue,
    disk_eigenvalue,
    qpi,
    spectrum,
)
from .wigner import HermiteState, fock_wigner, pure_state_wigner, qpi_oracle_disk, wigner  # noqa: E402
from .scaling import (  # noqa: E402
    ScalingParams,
    expansion_coefficients,
    resolve_conventions,
    scaled_spectrum,
)
