"""Asymmetric vector norms on finite-dimensional ordered spaces.

The package models cone-valued operators ``Q: R^n -> K`` that behave like
norms with values in a cone: retractions onto ``K`` that are positively
homogeneous, subadditive in the cone order and separating. It provides the
cones and lattices they live on, metric projections, scalar asymmetric
norms, the standard constructions of such operators, and a sampling-based
verifier that reports counterexamples.
"""

from .avn import AvnOperator
from .cones import ConeSpec, dual_cone, is_coisotone, is_selfdual_simplicial, membership, polar_cone
from .constructions import (
    avn_from_proper_cone,
    complement,
    mix,
    primitive_counterexample,
    range_one,
    suspension_avn,
)
from .demos import run_demo
from .errors import AvnError
from .lattice import YoudineLattice, lattice_avn
from .norms import GaugeH, HilbertLatticePos, MaxPositivePart, Suspension, axiom_check, properness_condition
from .numeric import DEFAULT_TOL, SampleState, ToleranceConfig
from .projection import moreau_check, project, project_batch, projection_avn
from .report import CheckReport, SuiteResult
from .verification import (
    check_axiom4,
    check_homogeneity,
    check_isotone,
    check_proper,
    check_retraction,
    check_subadditive,
    run_axiom_suite,
    theorem_foo_check,
    theorem_fooo_suite,
    theorem_hlatt_suite,
)

__version__ = "0.1.0"

__all__ = [
    "AvnError",
    "AvnOperator",
    "CheckReport",
    "ConeSpec",
    "DEFAULT_TOL",
    "GaugeH",
    "HilbertLatticePos",
    "MaxPositivePart",
    "SampleState",
    "SuiteResult",
    "Suspension",
    "ToleranceConfig",
    "YoudineLattice",
    "avn_from_proper_cone",
    "axiom_check",
    "check_axiom4",
    "check_homogeneity",
    "check_isotone",
    "check_proper",
    "check_retraction",
    "check_subadditive",
    "complement",
    "dual_cone",
    "is_coisotone",
    "is_selfdual_simplicial",
    "lattice_avn",
    "membership",
    "mix",
    "moreau_check",
    "polar_cone",
    "primitive_counterexample",
    "project",
    "project_batch",
    "projection_avn",
    "properness_condition",
    "range_one",
    "run_axiom_suite",
    "run_demo",
    "suspension_avn",
    "theorem_foo_check",
    "theorem_fooo_suite",
    "theorem_hlatt_suite",
]
