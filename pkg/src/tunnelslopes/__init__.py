"""Exact slope and binary invariants of knot tunnels built from twisted
splittings of torus knots, with a 2-bridge continued-fraction crosswalk."""

from .frames import (
    FareyFrame,
    HomologyClass,
    SplitKind,
    linking_slope,
    splitting_disk_slope,
    splitting_tunnel_slope,
    validate_frame,
)
from .iteration import (
    EngineMismatchError,
    IterationTrace,
    SequenceKind,
    SignTables,
    TraceStep,
    TwistSequence,
    assemble_invariants,
    binary_invariants,
    closed_form_slopes,
    oracle_slopes,
    position_coords,
    sign_tables,
    step_sign,
)
from .slopes import (
    Rational,
    SimpleSlope,
    Slope,
    TunnelInvariants,
    format_rational,
    invariants_equal,
    parse_rational,
    reduce,
    simple_class,
    slope_to_simple,
)
from .two_bridge import (
    CorrespondenceReport,
    TwoBridgeFraction,
    cf_to_twists,
    semisimple_slopes,
    twists_to_cf,
    validate_cf,
    verify_correspondence,
)

__version__ = "0.1.0"

__all__ = [
    "CorrespondenceReport",
    "EngineMismatchError",
    "FareyFrame",
    "HomologyClass",
    "IterationTrace",
    "Rational",
    "SequenceKind",
    "SignTables",
    "SimpleSlope",
    "Slope",
    "SplitKind",
    "TraceStep",
    "TunnelInvariants",
    "TwistSequence",
    "TwoBridgeFraction",
    "assemble_invariants",
    "binary_invariants",
    "cf_to_twists",
    "closed_form_slopes",
    "format_rational",
    "invariants_equal",
    "linking_slope",
    "oracle_slopes",
    "parse_rational",
    "position_coords",
    "reduce",
    "semisimple_slopes",
    "sign_tables",
    "simple_class",
    "slope_to_simple",
    "splitting_disk_slope",
    "splitting_tunnel_slope",
    "step_sign",
    "twists_to_cf",
    "validate_cf",
    "validate_frame",
    "verify_correspondence",
]
