"""Continuous-time plant models.

Rotor aerodynamics, the hydraulic pitch actuator, one- to four-mass
drivetrains, the generator-converter lag, the induction-generator rotor
current dynamics in the synchronous dq frame, wind field synthesis with
Weibull statistics, and the fractional-order benchmark plant.
"""

import math
import warnings
from collections import deque
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import InvalidParameter
from .fractional import gl_coefficients

__all__ = [
    "AeroParams",
    "CpForm",
    "power_coefficient",
    "aerodynamic",
    "PitchActuatorParams",
    "PitchActuator",
    "MassCount",
    "DrivetrainParams",
    "Drivetrain",
    "GeneratorParams",
    "generator_converter_step",
    "DfigParams",
    "dfig_derivatives",
    "dfig_outputs",
    "mechanical_rotor_step",
    "WindModel",
    "wind_sample",
    "weibull_pdf",
    "weibull_mean",
    "FoBenchmarkPlant",
]

BETZ_LIMIT = 0.593


class DegenerateInputWarning(RuntimeWarning):
    """A power-coefficient evaluation hit a degenerate intermediate ratio."""


def rk4_step(f, x, dt):
    """Classic fixed-step Runge-Kutta advance of x' = f(x)."""
    k1 = f(x)
    k2 = f(x + 0.5 * dt * k1)
    k3 = f(x + 0.5 * dt * k2)
    k4 = f(x + dt * k3)
    return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


# ---------------------------------------------------------------------------
# Aerodynamics


class CpForm(Enum):
    EXPONENTIAL = "exponential"
    SINUSOIDAL = "sinusoidal"


@dataclass(frozen=True)
class AeroParams:
    """Rotor geometry, air density, and power-coefficient fit."""

    radius: float
    rho: float = 1.225
    c1: float = 0.5176
    c2: float = 116.0
    c3: float = 0.4
    c4: float = 5.0
    c5: float = 21.0
    c6: float = 0.0068
    c7: float = 0.08
    c8: float = 0.035
    cp_form: CpForm = CpForm.EXPONENTIAL
    lambda_opt: float = 8.2

    def __post_init__(self):
        if self.radius <= 0 or self.rho <= 0:
            raise InvalidParameter("radius and air density must be positive")


def _inv_lambda_i(tsr, beta, p):
    den = tsr + p.c7 * beta
    if den == 0.0:
        return None
    return 1.0 / den - p.c8 / (beta**3 + 1.0)


def power_coefficient(tsr, beta, params):
    """Power coefficient at tip-speed ratio ``tsr`` and pitch ``beta`` (deg).

    Evaluates the configured curve fit and clamps the result to
    [0, 0.593]; a degenerate intermediate-ratio denominator yields 0.
    """
    if tsr <= 0:
        raise InvalidParameter("tip-speed ratio must be positive")
    if beta < -3.0:
        raise InvalidParameter("pitch angle below the operational floor")
    inv_li = _inv_lambda_i(tsr, beta, params)
    if inv_li is None:
        warnings.warn("intermediate tip-speed ratio is degenerate", DegenerateInputWarning)
        return 0.0
    if params.cp_form is CpForm.EXPONENTIAL:
        bracket = params.c1 * (params.c2 * inv_li - params.c3 * beta - params.c4)
        exponent = -params.c5 * inv_li
        if exponent > 700.0:  # exp would overflow; the bracket sign decides the clamp side
            cp = math.copysign(math.inf, bracket) if bracket != 0.0 else params.c6 * tsr
        else:
            cp = bracket * math.exp(exponent) + params.c6 * tsr
    else:
        lam_i = math.inf if inv_li == 0 else 1.0 / inv_li
        cp = (
            params.c1
            - params.c2 * beta * math.sin(math.pi * (lam_i + params.c3) / (params.c4 + params.c5 * beta))
            - params.c6 * (lam_i - 3.0) * beta
        )
    return min(max(cp, 0.0), BETZ_LIMIT)


def aerodynamic(v_w, omega_r, beta, params):
    """Aerodynamic power, torque, thrust, and tip-speed ratio.

    Torque uses P_a / omega_r when the rotor turns; at standstill it falls
    back to the torque-coefficient form with C_q = Cp / tsr.  Thrust uses
    C_t approximated by Cp / lambda_opt.
    """
    if v_w < 0:
        raise InvalidParameter("wind speed must be non-negative")
    if v_w == 0.0:
        return 0.0, 0.0, 0.0, 0.0
    area = math.pi * params.radius**2
    tsr = params.radius * omega_r / v_w
    if omega_r > 0:
        cp = power_coefficient(tsr, beta, params)
        p_a = 0.5 * params.rho * area * v_w**3 * cp
        t_a = p_a / omega_r
    else:
        tsr_eff = 1e-6
        cp = power_coefficient(tsr_eff, beta, params)
        c_q = cp / tsr_eff
        p_a = 0.0
        t_a = 0.5 * params.rho * math.pi * params.radius**3 * v_w**2 * c_q
    c_t = cp / params.lambda_opt
    f_t = 0.5 * params.rho * area * v_w**2 * c_t
    return p_a, t_a, f_t, tsr


# ---------------------------------------------------------------------------
# Pitch actuator


@dataclass(frozen=True)
class PitchActuatorParams:
    omega_n: float = 11.11  # rad/s, healthy
    xi: float = 0.6
    beta_min: float = -3.0  # deg
    beta_max: float = 90.0  # deg
    rate_limit: float = 8.0  # deg/s
    delay: float = 0.0  # s, command transport
    tau: float = 0.1  # s, first-order variant
    second_order: bool = True

    def __post_init__(self):
        if self.omega_n <= 0 or self.xi <= 0:
            raise InvalidParameter("actuator frequency and damping must be positive")
        if self.beta_min >= self.beta_max:
            raise InvalidParameter("pitch limits inverted")


class PitchActuator:
    """Hydraulic blade-pitch servo with rate and position saturation.

    Fault injection supplies the effective (omega_n^2, xi*omega_n) pair;
    when absent the healthy dynamics apply.  Saturation events are counted
    in ``rate_hits`` and ``position_hits``.
    """

    def __init__(self, params, beta0=0.0):
        self.params = params
        self.beta = beta0
        self.beta_dot = 0.0
        self.rate_hits = 0
        self.position_hits = 0
        self._queue = deque()

    def _delayed(self, beta_ref, dt):
        if self.params.delay <= 0.0:
            return beta_ref
        self._queue.append(beta_ref)
        depth = max(1, round(self.params.delay / dt))
        while len(self._queue) > depth:
            self._queue.popleft()
        return self._queue[0]

    def step(self, beta_ref, dt, fault=None):
        if dt <= 0:
            raise InvalidParameter("dt must be positive")
        p = self.params
        ref = self._delayed(beta_ref, dt)
        if fault is None:
            wn_sq = p.omega_n**2
            xi_wn = p.xi * p.omega_n
        else:
            wn_sq, xi_wn = fault
        prev = self.beta
        if p.second_order:
            state = np.array([self.beta, self.beta_dot])

            def deriv(x):
                return np.array([x[1], -2.0 * xi_wn * x[1] - wn_sq * x[0] + wn_sq * ref])

            beta_new, beta_dot_new = rk4_step(deriv, state, dt)
        else:
            beta_dot_new = (ref - self.beta) / p.tau
            beta_new = self.beta + beta_dot_new * dt
        # slew saturation, then position saturation
        max_step = p.rate_limit * dt
        if abs(beta_new - prev) > max_step:
            beta_new = prev + math.copysign(max_step, beta_new - prev)
            beta_dot_new = math.copysign(p.rate_limit, beta_dot_new)
            self.rate_hits += 1
        if beta_new > p.beta_max:
            beta_new = p.beta_max
            beta_dot_new = min(beta_dot_new, 0.0)
            self.position_hits += 1
        elif beta_new < p.beta_min:
            beta_new = p.beta_min
            beta_dot_new = max(beta_dot_new, 0.0)
            self.position_hits += 1
        self.beta = beta_new
        self.beta_dot = beta_dot_new
        return self.beta


# ---------------------------------------------------------------------------
# Drivetrains


class MassCount(Enum):
    ONE = 1
    TWO = 2
    TWO_LUMPED = 20
    THREE = 3
    FOUR = 4


@dataclass
class DrivetrainParams:
    """Parameter bundle for the selected drivetrain model.

    The geared two-mass model uses (j_rotor, j_gen, k_ls, d_ls, d_rotor,
    d_gen, n_gear, eta_dt); the lumped variant derives j_total / d_total
    from them and never stores the derived pair.  The three- and four-mass
    source models carry the factor 2 on their inertias and scale angle
    rates by omega_0.
    """

    mass_count: MassCount = MassCount.TWO
    j_rotor: float = 0.0
    j_gen: float = 0.0
    k_ls: float = 0.0
    d_ls: float = 0.0
    d_rotor: float = 0.0
    d_gen: float = 0.0
    n_gear: float = 1.0
    eta_dt: float = 1.0
    omega_0: float = 1.0
    # extra masses (four/three-mass forms)
    j_blade: float = 0.0
    j_hub: float = 0.0
    j_gearbox: float = 0.0
    k_bh: float = 0.0
    k_hs: float = 0.0
    d_bh: float = 0.0
    d_hs: float = 0.0
    d_blade: float = 0.0
    d_hub: float = 0.0
    d_gearbox: float = 0.0

    def __post_init__(self):
        if self.n_gear < 1:
            raise InvalidParameter("gearbox ratio must be >= 1")
        if self.mass_count in (MassCount.TWO, MassCount.TWO_LUMPED):
            if self.j_rotor <= 0 or self.j_gen <= 0:
                raise InvalidParameter("two-mass model needs positive inertias")

    @property
    def j_total(self):
        return self.j_rotor + self.n_gear**2 * self.j_gen

    @property
    def d_total(self):
        return self.d_rotor + self.n_gear**2 * self.d_gen


class Drivetrain:
    """Fixed-step drivetrain state machine.

    State layout by model:
      ONE         [omega]
      TWO         [omega_r, omega_g, theta_delta]
      TWO_LUMPED  [omega_r]
      THREE       [omega_b, omega_h, omega_gbg, theta_bh, theta_ls]
      FOUR        [omega_b, omega_h, omega_gb, omega_g, th_bh, th_ls, th_hs]
    """

    def __init__(self, params, state=None):
        self.params = params
        sizes = {
            MassCount.ONE: 1,
            MassCount.TWO: 3,
            MassCount.TWO_LUMPED: 1,
            MassCount.THREE: 5,
            MassCount.FOUR: 7,
        }
        n = sizes[params.mass_count]
        self.state = np.zeros(n) if state is None else np.asarray(state, dtype=float).copy()
        if self.state.shape != (n,):
            raise InvalidParameter(f"state must have {n} entries for {params.mass_count}")

    # -- per-model derivative fields -------------------------------------
    def _deriv_two(self, x, t_in, t_gen, d_ls_eff):
        p = self.params
        w_r, w_g, th = x
        t_ls = p.k_ls * th + d_ls_eff * (w_r - w_g / p.n_gear)
        dw_r = (t_in - t_ls - p.d_rotor * w_r) / p.j_rotor
        dw_g = (p.eta_dt * t_ls / p.n_gear - t_gen - p.d_gen * w_g) / p.j_gen
        return np.array([dw_r, dw_g, w_r - w_g / p.n_gear])

    def _deriv_three(self, x, t_in, t_gen):
        p = self.params
        w_b, w_h, w_gbg, th_bh, th_ls = x
        dw_b = (t_in - p.k_bh * th_bh - p.d_bh * (w_b - w_h) - p.d_blade * w_b) / (2 * p.j_blade)
        dw_h = (
            p.k_bh * th_bh
            + p.d_bh * (w_b - w_h)
            - p.k_ls * th_ls
            - p.d_ls * (w_h - w_gbg)
            - p.d_hub * w_h
        ) / (2 * p.j_hub)
        dw_gbg = (p.k_ls * th_ls + p.d_ls * (w_h - w_gbg) - p.d_gearbox * w_gbg - t_gen) / (
            2 * p.j_gearbox
        )
        return np.array(
            [dw_b, dw_h, dw_gbg, p.omega_0 * (w_b - w_h), p.omega_0 * (w_h - w_gbg)]
        )

    def _deriv_four(self, x, t_in, t_gen):
        p = self.params
        w_b, w_h, w_gb, w_g, th_bh, th_ls, th_hs = x
        dw_b = (t_in - p.k_bh * th_bh - p.d_bh * (w_b - w_h) - p.d_blade * w_b) / (2 * p.j_blade)
        dw_h = (
            p.k_bh * th_bh
            + p.d_bh * (w_b - w_h)
            - p.k_ls * th_ls
            - p.d_ls * (w_h - w_gb)
            - p.d_hub * w_h
        ) / (2 * p.j_hub)
        dw_gb = (
            p.k_ls * th_ls
            + p.d_ls * (w_h - w_gb)
            - (p.k_hs * th_hs + p.d_hs * (w_gb - w_g))
            - p.d_gearbox * w_gb
        ) / (2 * p.j_gearbox)
        dw_g = (p.k_hs * th_hs + p.d_hs * (w_gb - w_g) - p.d_gen * w_g - t_gen) / (2 * p.j_gen)
        return np.array(
            [
                dw_b,
                dw_h,
                dw_gb,
                dw_g,
                p.omega_0 * (w_b - w_h),
                p.omega_0 * (w_h - w_gb),
                p.omega_0 * (w_gb - w_g),
            ]
        )

    def step(self, t_in, t_gen, dt, d_ls_override=None):
        """Advance one step under input torque ``t_in`` and load ``t_gen``.

        For the geared two-mass model ``t_gen`` acts on the generator shaft;
        for the lumped and one-mass forms it is already rotor-side.
        ``d_ls_override`` feeds the friction-fault path.
        """
        if dt <= 0:
            raise InvalidParameter("dt must be positive")
        p = self.params
        mc = p.mass_count
        if mc is MassCount.ONE:
            j, d = 2 * p.j_rotor, p.d_rotor

            def deriv(x):
                return np.array([(t_in - t_gen - d * x[0]) / j])

        elif mc is MassCount.TWO_LUMPED:
            d_t = p.d_total if d_ls_override is None else d_ls_override

            def deriv(x):
                return np.array([(t_in - d_t * x[0] - t_gen) / p.j_total])

        elif mc is MassCount.TWO:
            d_ls = p.d_ls if d_ls_override is None else d_ls_override

            def deriv(x):
                return self._deriv_two(x, t_in, t_gen, d_ls)

        elif mc is MassCount.THREE:

            def deriv(x):
                return self._deriv_three(x, t_in, t_gen)

        else:

            def deriv(x):
                return self._deriv_four(x, t_in, t_gen)

        self.state = rk4_step(deriv, self.state, dt)
        return self.state

    def shaft_torques(self):
        """(T_LS, T_HS, omega_LS) of the geared two-mass model."""
        p = self.params
        if p.mass_count is not MassCount.TWO:
            raise InvalidParameter("shaft torques defined for the geared two-mass model")
        w_r, w_g, th = self.state
        w_ls = w_g / p.n_gear
        t_ls = p.k_ls * th + p.d_ls * (w_r - w_ls)
        return t_ls, t_ls / p.n_gear, w_ls


# ---------------------------------------------------------------------------
# Generator-converter


@dataclass(frozen=True)
class GeneratorParams:
    alpha_gc: float = 50.0  # rad/s, converter tracking bandwidth
    eta_g: float = 0.98

    def __post_init__(self):
        if self.alpha_gc <= 0:
            raise InvalidParameter("converter bandwidth must be positive")
        if not 0 < self.eta_g <= 1:
            raise InvalidParameter("generator efficiency must lie in (0, 1]")


def generator_converter_step(t_g, t_g_ref, params, dt, omega_g=0.0):
    """Advance the first-order torque-tracking lag; returns (T_G, P_g).

    The lag is integrated exactly, so the 63.2 % rise at 1/alpha_gc holds
    to machine precision.
    """
    if dt <= 0:
        raise InvalidParameter("dt must be positive")
    decay = math.exp(-params.alpha_gc * dt)
    t_new = t_g_ref + (t_g - t_g_ref) * decay
    return t_new, params.eta_g * t_new * omega_g


# ---------------------------------------------------------------------------
# Induction generator (rotor-side dq model)


@dataclass(frozen=True)
class DfigParams:
    """Electrical and mechanical constants of the doubly-fed machine.

    ``l_s``/``l_r`` are total (magnetizing branch included) inductances.
    SI units throughout; :meth:`from_pu` converts a per-unit datasheet with
    leakage inductances given separately.
    """

    r_s: float
    r_r: float
    l_s: float
    l_r: float
    l_m: float
    pole_pairs: int
    omega_s: float  # electrical rad/s
    v_s: float  # stator phase voltage amplitude, V
    inertia: float = 1.0  # kg m^2, rotating assembly
    friction: float = 0.0  # N m s/rad
    rated_power: float = 0.0  # W, informational

    def __post_init__(self):
        sigma = self.sigma
        if not 0 < sigma < 1:
            raise InvalidParameter(
                f"leakage coefficient must lie in (0, 1), got {sigma:.4f}; "
                "check that l_s and l_r include the magnetizing branch"
            )

    @property
    def sigma(self):
        return 1.0 - self.l_m**2 / (self.l_r * self.l_s)

    @property
    def rated_current(self):
        """Phase current amplitude delivering rated power at v_s."""
        if self.rated_power <= 0:
            raise InvalidParameter("rated_power not configured")
        return self.rated_power / (1.5 * self.v_s)

    @classmethod
    def from_pu(
        cls,
        r_s,
        r_r,
        l_ls,
        l_lr,
        l_m,
        pole_pairs,
        s_base,
        v_base_ll,
        f_base,
        inertia=1.0,
        friction=0.0,
    ):
        """Build SI parameters from a per-unit datasheet.

        ``l_ls``/``l_lr`` are leakage values; totals add the magnetizing
        inductance.  ``v_base_ll`` is the line-to-line RMS voltage base.
        """
        omega_b = 2.0 * math.pi * f_base
        z_base = v_base_ll**2 / s_base
        l_base = z_base / omega_b
        v_phase = v_base_ll * math.sqrt(2.0 / 3.0)
        return cls(
            r_s=r_s * z_base,
            r_r=r_r * z_base,
            l_s=(l_ls + l_m) * l_base,
            l_r=(l_lr + l_m) * l_base,
            l_m=l_m * l_base,
            pole_pairs=pole_pairs,
            omega_s=omega_b,
            v_s=v_phase,
            inertia=inertia,
            friction=friction,
            rated_power=s_base,
        )


def dfig_field_terms(slip, params):
    """(f1, f2, h) of the rotor-current state equation at the given slip."""
    p = params
    a = p.r_r / (p.sigma * p.l_r)
    w_slip = slip * p.omega_s
    emf = slip * p.l_m * p.v_s / (p.sigma * p.l_r * p.l_s)
    h = 1.0 / (p.sigma * p.l_r)
    return a, w_slip, emf, h


def dfig_derivatives(i_dr, i_qr, v_dr, v_qr, slip, params, d=(0.0, 0.0)):
    """Rotor current derivatives in the stator-flux-oriented frame."""
    a, w_slip, emf, h = dfig_field_terms(slip, params)
    di_dr = -a * i_dr + w_slip * i_qr + h * v_dr + d[0]
    di_qr = -a * i_qr - w_slip * i_dr + emf + h * v_qr + d[1]
    return di_dr, di_qr


def dfig_outputs(i_dr, i_qr, params):
    """(T_em, P_s, Q_s) from the rotor currents."""
    p = params
    k = p.l_m * p.v_s / (p.omega_s * p.l_s)
    t_em = p.pole_pairs * k * i_qr
    p_s = -p.l_m * p.v_s / p.l_s * i_qr
    q_s = p.v_s**2 / (p.omega_s * p.l_s) - p.l_m * p.v_s / p.l_s * i_dr
    return t_em, p_s, q_s


def mechanical_rotor_step(omega_r, t_em, t_load, params, dt):
    """Advance J w' = T_em - T_load - friction * w one step (RK4)."""
    if dt <= 0:
        raise InvalidParameter("dt must be positive")

    def deriv(x):
        return np.array([(t_em - t_load - params.friction * x[0]) / params.inertia])

    return float(rk4_step(deriv, np.array([omega_r]), dt)[0])


# ---------------------------------------------------------------------------
# Wind field


@dataclass
class WindModel:
    """Effective wind at the rotor plane as a four-component sum.

    Slow mean variation (deterministic harmonics on a base speed), seeded
    band-limited stochastic turbulence, rotational wind-shear ripple, and
    tower-shadow ripple.  Evaluation is a pure function of time so traces
    are reproducible for a fixed seed.
    """

    base: float
    mean_harmonics: tuple = ()  # (amplitude m/s, period s, phase rad)
    stoch_std: float = 0.0
    stoch_band: tuple = (0.02, 1.0)  # Hz
    stoch_harmonics: int = 24
    shear_amp: float = 0.0
    shear_freq: float = 0.2  # Hz
    shadow_amp: float = 0.0
    shadow_freq: float = 0.3  # Hz
    seed: int = 0
    weibull_k: float = 2.0
    weibull_c: float = 8.0
    _freqs: np.ndarray = field(init=False, repr=False, default=None)
    _amps: np.ndarray = field(init=False, repr=False, default=None)
    _phases: np.ndarray = field(init=False, repr=False, default=None)

    def __post_init__(self):
        if self.base <= 0:
            raise InvalidParameter("base wind speed must be positive")
        rng = np.random.default_rng(self.seed)
        n = self.stoch_harmonics
        f_lo, f_hi = self.stoch_band
        self._freqs = np.logspace(math.log10(f_lo), math.log10(f_hi), n)
        amps = 1.0 / np.sqrt(self._freqs)
        # scale so the harmonic sum has the requested standard deviation
        rms = math.sqrt(float(np.sum(0.5 * amps**2)))
        self._amps = amps * (self.stoch_std / rms if rms > 0 else 0.0)
        self._phases = rng.uniform(0.0, 2.0 * math.pi, n)

    def mean_component(self, t):
        v = self.base
        for amp, period, phase in self.mean_harmonics:
            v += amp * np.sin(2.0 * math.pi * np.asarray(t) / period + phase)
        return v

    def sample(self, t):
        t = np.asarray(t, dtype=float)
        v = self.mean_component(t)
        if self.stoch_std > 0:
            arg = 2.0 * math.pi * np.multiply.outer(t, self._freqs) + self._phases
            v = v + np.sin(arg) @ self._amps
        if self.shear_amp:
            v = v + self.shear_amp * np.cos(2.0 * math.pi * self.shear_freq * t)
        if self.shadow_amp:
            v = v + self.shadow_amp * np.cos(2.0 * math.pi * self.shadow_freq * t + 1.0)
        return float(v) if np.isscalar(t) or t.ndim == 0 else v


def wind_sample(t, model):
    return model.sample(t)


def weibull_pdf(w, k, c):
    """Weibull probability density at wind speed ``w``."""
    if k <= 0 or c <= 0:
        raise InvalidParameter("shape and scale factors must be positive")
    w = np.asarray(w, dtype=float)
    if np.any(w < 0):
        raise InvalidParameter("wind speed must be non-negative")
    out = (k / c) * (w / c) ** (k - 1) * np.exp(-((w / c) ** k))
    return float(out) if out.ndim == 0 else out


def weibull_mean(k, c):
    """Average wind speed (c/k) * Gamma(1/k)."""
    if k <= 0 or c <= 0:
        raise InvalidParameter("shape and scale factors must be positive")
    return (c / k) * math.gamma(1.0 / k)


# ---------------------------------------------------------------------------
# Fractional benchmark plant


class FoBenchmarkPlant:
    """Discretized m1 D^{n1} x + m2 D^{n2} x + m3 x = u.

    Both difference operators share the sample period and the full signal
    history (up to ``memory`` samples); each step solves the implicit
    equation for the newest sample.
    """

    def __init__(self, dt, m=(0.8, 0.9, 1.0), orders=(2.2, 0.5), memory=None):
        if dt <= 0:
            raise InvalidParameter("dt must be positive")
        self.dt = dt
        self.m1, self.m2, self.m3 = m
        self.n1, self.n2 = orders
        self.memory = memory
        self._hist = np.zeros(1024)
        self._len = 0
        cap = 1024 if memory is None else memory + 1
        self._c1 = gl_coefficients(self.n1, cap)
        self._c2 = gl_coefficients(self.n2, cap)
        self._s1 = dt ** (-self.n1)
        self._s2 = dt ** (-self.n2)

    def _grow(self, n):
        if n > self._c1.shape[0]:
            self._c1 = gl_coefficients(self.n1, n)
            self._c2 = gl_coefficients(self.n2, n)
        if n > self._hist.shape[0]:
            buf = np.zeros(max(n, 2 * self._hist.shape[0]))
            buf[: self._len] = self._hist[: self._len]
            self._hist = buf

    def reset(self):
        self._len = 0
        self._hist[:] = 0.0

    def step(self, u):
        """Apply input ``u`` for one sample; returns the new output x."""
        n_hist = self._len if self.memory is None else min(self._len, self.memory)
        self._grow(self._len + 1)
        tail1 = tail2 = 0.0
        if n_hist > 0:
            recent = self._hist[self._len - n_hist : self._len][::-1]
            tail1 = float(self._c1[1 : n_hist + 1] @ recent)
            tail2 = float(self._c2[1 : n_hist + 1] @ recent)
        denom = self.m1 * self._s1 + self.m2 * self._s2 + self.m3
        x = (u - self.m1 * self._s1 * tail1 - self.m2 * self._s2 * tail2) / denom
        self._hist[self._len] = x
        self._len += 1
        return x
