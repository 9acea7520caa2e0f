"""Exact rank-two toric geometry: chamber fans, linear systems, section rings and 2-ray games."""
from .cones2d import Cone2, RayZ2, UnimodularMap, cone_position, cross, normalize_wall, primitivize
from .graded_toric import (
    ChamberFan, GradingError, GradingMatrix, MobileConeWarning, ToricModel,
    adjunction_anticanonical, anticanonical_ambient, chamber_fan, effective_cone,
    gorenstein_check, k_condition, mobile_cone_toric, model_from_chamber,
)
from .monomials import (
    LinearSystem, LinearSystemError, MonomialClass, Stratum, base_locus, build_system,
    enumerate_monomials, fibrewise_transform, local_chart, local_support, smoothness_certificate,
)
from .sectionring import SectionRingPresentation, rewrite_in_generators, section_generators
from .game import GameTrace, classify_wall, restrict_to_hypersurface, run_game
from .scenario import Scenario, ScenarioError, apply_transform, builtin

__version__ = "0.1.0"

__all__ = [
    "Cone2",
    "RayZ2",
    "UnimodularMap",
    "cone_position",
    "cross",
    "normalize_wall",
    "primitivize",
    "ChamberFan",
    "GradingError",
    "GradingMatrix",
    "MobileConeWarning",
    "ToricModel",
    "adjunction_anticanonical",
    "anticanonical_ambient",
    "chamber_fan",
    "effective_cone",
    "gorenstein_check",
    "k_condition",
    "mobile_cone_toric",
    "model_from_chamber",
    "LinearSystem",
    "LinearSystemError",
    "MonomialClass",
    "Stratum",
    "base_locus",
    "build_system",
    "enumerate_monomials",
    "fibrewise_transform",
    "local_chart",
    "local_support",
    "smoothness_certificate",
    "SectionRingPresentation",
    "rewrite_in_generators",
    "section_generators",
    "GameTrace",
    "classify_wall",
    "restrict_to_hypersurface",
    "run_game",
    "Scenario",
    "ScenarioError",
    "apply_transform",
    "builtin",
]
