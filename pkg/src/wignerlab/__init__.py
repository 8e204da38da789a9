"""Wigner-rotation spin channels acting on two-particle Werner states."""
from .boost_map import RotationKind, RotationType, ScenarioConfig, channel_outputs, mixed, same, single
from .closed_forms import (SeparabilityWindow, closed_form_concurrence, closed_form_t, closed_form_tensor,
                           separability_window)
from .errors import (ConfigError, DegenerateAxisError, DomainError, InvariantError, UnsupportedScenarioError,
                     WignerLabError)
from .geometry import (CorrelationTensor, Orbit, bell_violation_possible, concurrence, correlation_tensor,
                       in_octahedron, orbit, t_vector)
from .lorentz import BoostConfig, BoostParam, twr_angle, twr_axis, wigner_rotation_exact
from .momentum import Family, MomentumDistribution, MomentumLabel
from .spin_algebra import SU2Rotation, bell_projector, bell_state, werner_state

__version__ = "0.1.0"
