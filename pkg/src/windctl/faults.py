"""Time-windowed fault injection.

Covers stuck and gain-scaled sensors, hydraulic pressure loss and oil air
content in the pitch actuator, drivetrain friction growth, and the
generator actuation-efficiency profile used by the partial-load scenario.
"""

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import ConfigError, InvalidParameter

__all__ = [
    "FaultKind",
    "FaultEvent",
    "FaultSchedule",
    "apply_sensor_faults",
    "pitch_fault_dynamics",
    "actuator_efficiency",
    "friction_fault",
    "PitchFaultMap",
]


class FaultKind(Enum):
    SENSOR_STUCK = "sensor_stuck"
    SENSOR_GAIN = "sensor_gain"
    PRESSURE_DROP = "pressure_drop"
    AIR_CONTENT = "air_content"
    FRICTION_SCALE = "friction_scale"
    ACTUATOR_EFFICIENCY = "actuator_efficiency"


@dataclass(frozen=True)
class FaultEvent:
    """One fault active on ``target`` during [t_start, t_end)."""

    kind: FaultKind
    t_start: float
    t_end: float
    target: str = ""
    value: float = 0.0  # stuck reading, gain factor, friction factor, or max f
    ramp: bool = False  # pressure drop only: run f linearly 0 -> value over the window

    def __post_init__(self):
        if not self.t_start < self.t_end:
            raise ConfigError(f"fault window must run forward: [{self.t_start}, {self.t_end})")
        if self.kind is FaultKind.SENSOR_GAIN and self.value <= 0:
            raise ConfigError("sensor gain factor must be positive")
        if self.kind is FaultKind.PRESSURE_DROP and not 0 <= self.value <= 1:
            raise ConfigError("pressure-drop indicator must lie in [0, 1]")
        if self.kind is FaultKind.FRICTION_SCALE and self.value < 1:
            raise ConfigError("friction factor must be >= 1")

    def active(self, t):
        return self.t_start <= t < self.t_end


@dataclass
class FaultSchedule:
    """Ordered fault events; same-target events may not overlap in time."""

    events: list = field(default_factory=list)

    def __post_init__(self):
        self.events = sorted(self.events, key=lambda e: (e.target, e.t_start))
        for a, b in zip(self.events, self.events[1:]):
            if a.target == b.target and a.kind == b.kind and b.t_start < a.t_end:
                raise ConfigError(
                    f"overlapping {a.kind.value} events on '{a.target}': "
                    f"[{a.t_start}, {a.t_end}) and [{b.t_start}, {b.t_end})"
                )

    def active(self, t, kinds=None):
        for ev in self.events:
            if ev.active(t) and (kinds is None or ev.kind in kinds):
                yield ev

    def validate_targets(self, known):
        sensor_kinds = (FaultKind.SENSOR_STUCK, FaultKind.SENSOR_GAIN)
        for ev in self.events:
            if ev.kind in sensor_kinds and ev.target not in known:
                raise ConfigError(f"fault targets unknown signal '{ev.target}'")


def apply_sensor_faults(measurements, schedule, t):
    """Return a copy of the measurement map with faulted readings replaced.

    Stuck events pin the reading to the stored value, gain events scale it;
    outside every window the map is returned unchanged (same object).
    """
    out = None
    for ev in schedule.active(t, (FaultKind.SENSOR_STUCK, FaultKind.SENSOR_GAIN)):
        if ev.target not in measurements:
            raise ConfigError(f"fault targets unknown signal '{ev.target}'")
        if out is None:
            out = dict(measurements)
        if ev.kind is FaultKind.SENSOR_STUCK:
            out[ev.target] = ev.value
        else:
            out[ev.target] = out[ev.target] * ev.value
    return measurements if out is None else out


# Pitch-system dynamics under hydraulic faults: nominal, full-pressure-loss,
# and high-air-content (natural frequency rad/s, damping ratio) pairs.
@dataclass(frozen=True)
class PitchFaultMap:
    omega_n0: float = 11.11
    xi0: float = 0.6
    omega_nf: float = 3.42
    xif: float = 0.9
    omega_air: float = 5.73
    xi_air: float = 0.45


def pitch_fault_dynamics(t, schedule, fault_map=PitchFaultMap()):
    """(omega_n^2, xi*omega_n) of the pitch actuator at time ``t``.

    Pressure-drop events interpolate both products linearly in the fault
    indicator f; a constant indicator uses the event value, a ramped event
    runs f linearly 0 -> value across its window.  Air-content events pin
    the dynamics to the 15 % air-in-oil pair.
    """
    fm = fault_map
    w0sq = fm.omega_n0**2
    xw0 = fm.xi0 * fm.omega_n0
    for ev in schedule.active(t, (FaultKind.AIR_CONTENT,)):
        return fm.omega_air**2, fm.xi_air * fm.omega_air
    for ev in schedule.active(t, (FaultKind.PRESSURE_DROP,)):
        span = ev.t_end - ev.t_start
        f = ev.value * (t - ev.t_start) / span if ev.ramp else ev.value
        wfsq = fm.omega_nf**2
        xwf = fm.xif * fm.omega_nf
        return w0sq + f * (wfsq - w0sq), xw0 + f * (xwf - xw0)
    return w0sq, xw0


def interpolate_pressure_drop(f, fault_map=PitchFaultMap()):
    """(omega_n, xi) at fault indicator ``f`` in [0, 1]."""
    if not 0 <= f <= 1:
        raise InvalidParameter(f"fault indicator must lie in [0, 1], got {f}")
    fm = fault_map
    wsq = fm.omega_n0**2 + f * (fm.omega_nf**2 - fm.omega_n0**2)
    xw = fm.xi0 * fm.omega_n0 + f * (fm.xif * fm.omega_nf - fm.xi0 * fm.omega_n0)
    wn = math.sqrt(wsq)
    return wn, xw / wn


def actuator_efficiency(t, t_loss=600.0, t_knee=670.0, step=1.0, continuous=False):
    """Generator actuation efficiency factor in (0, 1].

    Healthy before ``t_loss``; a compounded 0.5 %-per-step loss up to
    ``t_knee``; afterwards a 4/5 floor plus a decaying exponential and a
    1/20-amplitude slow cosine sweep.  ``step`` is the recursion granularity
    in seconds.  The formula restarts near 0.95 at the knee; ``continuous``
    rescales the third branch to start at the decayed value instead.
    """
    if t < t_loss:
        return 1.0
    if t < t_knee:
        return 0.995 ** (math.floor((t - t_loss) / step))
    tau = t - t_knee
    zeta = 0.8 + 0.2 * math.exp(-tau / 20.0) - 0.05 * math.cos(math.pi * tau / 1000.0)
    if continuous:
        knee_val = 0.995 ** (math.floor((t_knee - t_loss) / step))
        zeta *= knee_val / 0.95
    return zeta


def friction_fault(t, base_damping, schedule):
    """Drivetrain damping with friction-growth windows applied."""
    for ev in schedule.active(t, (FaultKind.FRICTION_SCALE,)):
        return base_damping * ev.value
    return base_damping
