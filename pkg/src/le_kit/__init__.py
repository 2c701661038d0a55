"""Closed-form solutions of the critical Lane-Emden equation in d = 3, 4, 6.

The package evaluates, classifies, and numerically verifies every real
closed-form solution family of

    theta'' + (d-1)/x theta' + theta^p = 0,   p = (d+2)/(d-2),

including the Jacobi-elliptic families (d=4, p=3) and the Weierstrass
family (d=6, p=2), on top of an in-repo elliptic special-functions core
and an independent adaptive Runge-Kutta oracle.
"""

from .elliptic import (
    EllipticValue,
    Modulus,
    WeierstrassInvariants,
    arcsn,
    carlson_rf,
    complete_k,
    incomplete_f,
    jacobi_sn,
    weierstrass_p,
)
from .errors import (
    BlowUpDetected,
    BranchEndError,
    ConvergenceError,
    DomainError,
    LaneEmdenKitError,
    NoRealSolutionError,
    NotCriticalError,
    PoleError,
    StepLimitExceeded,
    UnsupportedBranchError,
    UnsupportedCaseError,
    WindowEmptyError,
)
from .lane_emden import (
    AutonomousCoefficients,
    CriticalCase,
    PhasePoint,
    autonomous_coefficients,
    critical_case,
    first_integral,
    from_autonomous,
    scale_solution,
    singular_solution,
    talenti_aubin,
    to_autonomous,
)
from .regimes import (
    PotentialPolynomial,
    RegimeLabel,
    RegimeReport,
    classify,
    first_integral_scale,
    potential,
    real_roots,
)
from .solutions import (
    ClosedFormSolution,
    JacobiBand,
    JacobiUnbounded,
    Singular,
    SolutionTrace,
    TalentiAubinScaled,
    WeierstrassFamily,
    build,
    evaluate,
    trace,
)
from .verify import (
    CheckReport,
    IntegratorConfig,
    NumericTrajectory,
    check_closed_form,
    integrate_autonomous,
    integrate_radial,
    residual_radial,
)

__version__ = "0.1.0"
