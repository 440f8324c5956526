"""acphase: interference phases of charges and dipoles in time-varying
classical EM fields, and the visibility loss from emission-time averaging."""

from .engine import (MCEstimate, PhaseCoefficients, VisibilityResult,
                     extract_AB, loop_phase, monte_carlo_visibility,
                     small_phase_limit, visibility, visibility_result)
from .fields import (Charge, Dipole, PlaneWave, StaticGradientField,
                     WaveguideMode, ab_connection, ac_connection, eval_EB,
                     gauge_potential)
from .trajectories import (InterferenceLoop, Segment, make_asymmetric,
                           make_diamond, make_ellipse, make_guide_crossing)

__all__ = [
    "Charge", "Dipole", "PlaneWave", "WaveguideMode", "StaticGradientField",
    "InterferenceLoop", "Segment",
    "make_diamond", "make_ellipse", "make_asymmetric", "make_guide_crossing",
    "eval_EB", "gauge_potential", "ac_connection", "ab_connection",
    "PhaseCoefficients", "MCEstimate", "VisibilityResult",
    "loop_phase", "extract_AB", "visibility", "small_phase_limit",
    "monte_carlo_visibility", "visibility_result",
]

__version__ = "0.1.0"
