"""Elastodynamic resonances of 2D disk and core-shell metamaterial structures.

Mode-exact layer-potential solvers on circles: complex-argument cylinder
functions, single-layer-potential mode matrices, the frequency-domain
Neumann-Poincare eigensystem, per-mode transmission solvers and detection of
cloaking by anomalous localized resonance.
"""

__version__ = "0.1.0"

from .calr import (  # noqa: F401
    CalrReport,
    CoreShellConfig,
    TuningFailedError,
    Verdict,
    calr_energy,
    critical_radius,
    recipe_config,
    tune_p,
)
from .media import (  # noqa: F401
    AnnulusGeometry,
    Convexity,
    DegenerateMaterialError,
    LameParams,
    Wavenumbers,
    convexity_check,
    wavenumbers,
)
from .nocore import (  # noqa: F401
    ModeSolution,
    NewtonianPotential,
    NormalizationSingularError,
    SourceModes,
    SourceTerm,
    dissipation_energy,
    solve_modes,
    solve_nocore,
    sweep,
)
from .np_spectrum import (  # noqa: F401
    EigCase,
    NpEigenSystem,
    NpModeMatrix,
    np_eigensystem,
    np_matrix,
    quasistatic_reference,
)
from .potentials import (  # noqa: F401
    WaveBasisField,
    WaveKind,
    mode_matrix_boundary,
    qp_traction_coeffs,
    scalar_slp_mode,
    traction_matrix,
    two_radius_coupling,
    vector_slp_eval,
)
from .specfun import CylPair, bessel_j, cyl_pair, hankel1  # noqa: F401
