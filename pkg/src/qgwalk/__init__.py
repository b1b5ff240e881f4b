"""Random walks on the Kac-Paljutkin and Sekine finite quantum groups.

Core objects: a dense multi-matrix algebra with its invariant state
(`algebra`), the representation theory of KP_n (`sekine`), the
idempotent states and their Fourier characterizations (`idempotents`),
convolution dynamics with exact distances, mixing bounds and limit
classification (`walks`), the eight-dimensional Kac-Paljutkin group
(`kp8`), walks on the dual (`dual`), and a CLI front end (`cli`).
"""

from .algebra import (
    DEFAULT_TOL,
    AlgebraElement,
    AlgebraShape,
    ShapeMismatchError,
    haar_integral,
    is_positive,
    l1_norm,
    l2_norm,
    qtv_distance,
    unit,
    zero,
)
from .dual import (
    DualCentralElement,
    EpsilonVector,
    dual_bounds,
    dual_classify,
    dual_fourier_values,
    dual_power,
    dual_qtv_to_haar,
    dual_to_primal,
    dual_validate_state,
    epsilon_to_element,
    is_pointwise_central_idempotent,
)
from .idempotents import (
    HaarSpec,
    HGammaLSpec,
    HGammaLTauSpec,
    HGammaSpec,
    IdempotentSpec,
    build_idempotent,
    enumerate_central_idempotents,
    idempotent_profile,
    is_central_functional,
    is_idempotent_state,
    subgroup_from_generators,
    subgroups_znxzn,
    valid_sign_vectors,
)
from .kp8 import (
    KPCoefficients,
    kp_bounds,
    kp_classify,
    kp_convolution_power,
    kp_element,
    kp_fourier_profile,
    kp_irreps,
    kp_qtv_to_haar,
    kp_validate_state,
    pal_idempotents,
)
from .sekine import (
    CentralElement,
    FourierProfile,
    IrrepLabel,
    StateReport,
    central_profile,
    central_to_element,
    character,
    convolve,
    element_to_central,
    fourier_block,
    fourier_profile,
    irrep_labels,
    profile_to_central,
    rho_minus,
    rho_plus,
    sigma_minus,
    sigma_plus,
    validate_state,
    x_label,
)
from .walks import (
    LimitClassification,
    WalkReport,
    classify_limit,
    convolution_power,
    cutoff_bounds,
    cutoff_state,
    detect_cycle,
    ds_lower_bound,
    ds_upper_bound,
    qtv_to_haar,
    walk_trace,
)

__version__ = "0.1.0"
