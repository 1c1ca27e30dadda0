"""secmux: secrecy rate regions and exact leakage bounds for two-user
interference channels with multiplexed confidential messages.

Modules by topic:

* ``finite_prob``  exact information measures and the psi/phi exponents
* ``hashing``      GF(2) linear bijections and exhaustive hashing checks
* ``discrete_ic``  brute-force leakage on tiny discrete channels
* ``gaussian``     closed-form rate regions and grid sweeps
* ``geometry``     convex polygon machinery
* ``verify``       the verification suites behind ``secmux verify``
* ``cli``          the command-line front end
"""

from .finite_prob import (
    FiniteConditional,
    FiniteDistribution,
    JointDistribution,
    conditional_mutual_information,
    entropy,
    mutual_information,
    phi,
    phi_slope_at_zero,
    psi,
)
from .gaussian import (
    GaussianIC,
    MiProfile,
    PowerSplit,
    SweepConfig,
    baseline_best,
    baseline_inner,
    hk_polygon,
    inner_point_feasible,
    mi_profile,
    outer_region,
    secure_secret_polygon,
    sweep_backend_name,
    sweep_union,
)
from .geometry import RatePolygon, hausdorff_distance
from .hashing import (
    LinearBijection,
    MessageLayout,
    Projection,
    enumerate_bijections,
    pa_bound_sides,
    sample_bijection,
    two_universal_exhaustive,
)

__version__ = "0.1.0"
