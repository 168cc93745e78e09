"""Operator-valued Hardy spaces of the circle and disk."""
from ._core import BACKEND
from .boundary import BoundaryResult, poisson_convergence_report, radial_boundary, richardson
from .errors import (
    ConvergenceError,
    DomainError,
    InvalidArgumentError,
    InvalidValueError,
    NotRepresentableError,
    OpHardyError,
    PreconditionError,
    SchemaError,
    ValidationError,
)
from .gallery import GallerySpec, banach_transpose, build, separability_witness
from .grid import (
    ArcQuadrature,
    CircleFunction,
    CircleGrid,
    DiskFunction,
    FourierPolynomial,
    PoissonExtension,
    RadiusLadder,
    RuleBased,
    Sampled,
    TaylorPolynomial,
    eval_circle,
    eval_disk,
    make_grid,
    sample,
)
from .norms import (
    gram,
    hp_disk_norm,
    l2_strong_norm,
    lp_scalar_norm,
    lp_sot_norm,
    lp_strong_norm_estimate,
    op_norm,
    pointwise_norm,
    strong_disk_norm,
)
from .schemas import parse_spec
from .transforms import (
    analytic_defect,
    fourier_coefficient,
    poisson_integral,
    poisson_kernel,
    radial_section,
    strong_poisson,
)
from .verify import (
    VerificationReport,
    verify_adjoint_identity,
    verify_boundary_roundtrip,
    verify_containment_gaps,
    verify_contraction_nonanalytic,
    verify_isometry,
)

__version__ = "0.1.0"
