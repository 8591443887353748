"""Non-vanishing of Schubert products on cominuscule flag varieties."""
from __future__ import annotations

from .errors import CapExceeded, CominError, InternalError, NotationError, UnsupportedSpace
from .feasibility import (
    Engine,
    FeasibilityReport,
    Inequality,
    count_pi_lambda,
    emit_inequalities,
    enumerate_feasible,
    generalized_codim,
    is_feasible,
)
from .orbit import OrbitDatum, factorize_levi, m_of_p, orbit_datum, orthogonal_sequence
from .rootsys import act, build_root_system, pairing, weyl_enumerate
from .space import (
    CominusculeSpace,
    ProductSpace,
    build_space,
    dual,
    enumerate_positions,
    format_position,
    parse_position,
)

__all__ = [
    "CapExceeded", "CominError", "InternalError", "NotationError", "UnsupportedSpace",
    "Engine", "FeasibilityReport", "Inequality", "count_pi_lambda", "emit_inequalities",
    "enumerate_feasible", "generalized_codim", "is_feasible",
    "OrbitDatum", "factorize_levi", "m_of_p", "orbit_datum", "orthogonal_sequence",
    "act", "build_root_system", "pairing", "weyl_enumerate",
    "CominusculeSpace", "ProductSpace", "build_space", "dual", "enumerate_positions",
    "format_position", "parse_position",
]
