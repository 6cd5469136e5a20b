"""Moving measurement bases compatible with the collisional dynamics.

A projective decomposition of the qubit is a diameter of the Bloch ball,
parameterized by polar angles (theta, phi).  Two one-parameter flows of
diameters matter here:

  forward   d phi/dt = omega - gamma sin 2 phi,   d theta/dt = + gamma sin 2 theta cos^2 phi
  backward  d phi/dt = omega + gamma sin 2 phi,   d theta/dt = - gamma sin 2 theta cos^2 phi

The forward flow is the direction of the linearly evolved Bloch vector,
n(t) = exp(t S3) n0 / |exp(t S3) n0| with S3 the lower-right 3x3 block of the
generator; a basis dragged along it satisfies the span condition
T(span{P}) inside span{P'} between any two of its instants, which is what
makes the associated history family consistent.  The backward flow is the same
construction for the adjoint map run against time, equivalent to flipping the
sign of gamma.  Both flows are available as adaptive ODE integration, as the
exact normalized linear flow, and as a tangent-variable closed form

    mu = tan phi,  nu = tan theta

valid on any branch where phi stays clear of +-pi/2 (the closed form has a
pole there; callers get TangentBranchError and should fall back to the ODE).

Along a family the local basis-flip rate is

    kappa = gamma (1 - n_x^2) = -(1/2) n . S3 n,

which interpolates between kappa = gamma for the z family (parity) and the
two constant rates of the equatorial stationary families that exist for
gamma >= omega:

    sin 2 phi = +- omega/gamma,  theta = pi/2,
    kappa_x = (gamma - xi)/2 = omega^2 / (2 (gamma + xi)),
    kappa_y = (gamma + xi)/2.

The four equatorial roots merge in pairs at gamma = omega and disappear below
it; in the weak-decoherence regime every family rotates, advancing phi by pi
each stroboscopic period pi/eta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import expm

from .ptm import CRITICAL, IntegrationError, ModelParams, UNDERDAMPED, generator, propagator_closed_form

FORWARD = "forward"
BACKWARD = "backward"

# tangent values beyond this mean the closed form left its branch
_TANGENT_LIMIT = 1e12


class TangentBranchError(ValueError):
    """The tangent-space closed form hit a pole; integrate the ODE instead."""


@dataclass(frozen=True)
class BlochDirection:
    """A Bloch-ball diameter by polar angles; phi is kept unwrapped."""

    theta: float
    phi: float

    @property
    def unit_vector(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)])

    @property
    def phi_wrapped(self) -> float:
        """phi reduced to [0, 2 pi)."""
        return self.phi % (2.0 * math.pi)

    def canonical(self) -> "BlochDirection":
        """Antipodal representative with theta in [0, pi/2] and phi in [0, 2 pi).

        theta is first reduced to [0, pi] (the polar angle of the actual unit
        vector); if it still exceeds pi/2 the antipodal point is returned.
        Diameters are unordered pairs {n, -n}, so this is a relabeling only.
        """
        n = self.unit_vector
        if n[2] < 0 or (n[2] == 0 and (n[1] < 0 or (n[1] == 0 and n[0] < 0))):
            n = -n
        theta = math.acos(np.clip(n[2], -1.0, 1.0))
        phi = math.atan2(n[1], n[0]) % (2.0 * math.pi)
        return BlochDirection(theta=theta, phi=phi)

    @classmethod
    def from_vector(cls, n) -> "BlochDirection":
        n = np.asarray(n, dtype=float)
        n = n / np.linalg.norm(n)
        return cls(theta=math.acos(np.clip(n[2], -1.0, 1.0)), phi=math.atan2(n[1], n[0]))


X_DIRECTION = BlochDirection(theta=math.pi / 2.0, phi=0.0)
Y_DIRECTION = BlochDirection(theta=math.pi / 2.0, phi=math.pi / 2.0)
Z_DIRECTION = BlochDirection(theta=0.0, phi=0.0)


def _as_direction(obj) -> BlochDirection:
    if isinstance(obj, BlochDirection):
        return obj
    if hasattr(obj, "bloch_direction"):
        return obj.bloch_direction
    return BlochDirection.from_vector(obj)


def bloch_block(params: ModelParams) -> np.ndarray:
    """Lower-right 3x3 block S3 of the generator (the traceless-sector flow)."""
    return generator(params)[1:, 1:]


def transition_rate(direction: BlochDirection, params: ModelParams) -> float:
    """Local flip rate kappa = gamma (1 - n_x^2) of the telegraph process."""
    d = _as_direction(direction)
    nx = math.sin(d.theta) * math.cos(d.phi)
    return params.gamma * (1.0 - nx * nx)


def _ode_rhs(direction: str):
    s = +1.0 if direction == FORWARD else -1.0

    def rhs(_t, y, om, g):
        th, ph = y
        return (s * g * math.sin(2.0 * th) * math.cos(ph) ** 2, om - s * g * math.sin(2.0 * ph))

    return rhs


def family_ode_step(state: BlochDirection, params: ModelParams, direction: str, dt: float) -> BlochDirection:
    """Advance (theta, phi) by dt with adaptive integration (local error <= 1e-10)."""
    if direction not in (FORWARD, BACKWARD):
        raise ValueError(f"direction must be '{FORWARD}' or '{BACKWARD}'")
    if dt == 0.0:
        return state
    sol = solve_ivp(
        _ode_rhs(direction),
        (0.0, dt),
        (state.theta, state.phi),
        args=(params.omega, params.gamma),
        method="DOP853",
        rtol=1e-12,
        atol=1e-12,
    )
    if not sol.success:
        raise IntegrationError(f"family ODE step failed: {sol.message}")
    return BlochDirection(theta=float(sol.y[0, -1]), phi=float(sol.y[1, -1]))


def exact_direction(initial: BlochDirection, params: ModelParams, direction: str, t: float) -> BlochDirection:
    """Family direction at time t through the normalized linear flow.

    forward:  n(t) prop exp(t S3) n(0);  backward:  n(t) prop exp(-t S3^T) n(0).
    Identical to integrating the angle ODEs (the ODEs are the projective form
    of the linear flow), but exact to machine precision.  The returned angles
    are one valid representative of the diameter; they are not guaranteed to
    be the unwrapped continuation (the ODE route provides that).
    """
    A = bloch_block(params)
    M = expm(t * A) if direction == FORWARD else expm(-t * A.T)
    v = M @ _as_direction(initial).unit_vector
    nrm = np.linalg.norm(v)
    if nrm == 0.0:
        raise IntegrationError("linear flow collapsed to zero vector")
    v /= nrm
    theta = math.acos(np.clip(v[2], -1.0, 1.0))
    phi = math.atan2(v[1], v[0])
    # unwrap phi against the initial value so callers see a continuous angle
    k = round((initial.phi - phi) / (2.0 * math.pi))
    return BlochDirection(theta=theta, phi=phi + 2.0 * math.pi * k)


def _pole_time(params: ModelParams, q: float) -> float:
    """First t > 0 where the tangent closed form's denominator vanishes (inf if none)."""
    g, om = params.gamma, params.omega
    if g > om:
        xi = params.discriminant
        if q < -xi:
            return math.atanh(xi / (-q)) / xi
        return math.inf
    if g == om:
        return -1.0 / q if q < 0 else math.inf
    eta = params.discriminant
    return (math.atan(q / eta) + math.pi / 2.0) / eta


def family_closed_form(initial: BlochDirection, params: ModelParams, direction: str, t: float) -> BlochDirection:
    """Closed-form family direction in tangent variables mu = tan phi, nu = tan theta.

    Valid while phi stays on its branch (no crossing of +-pi/2 mod pi); at or
    past the pole, or if a tangent magnitude exceeds 1e12, TangentBranchError
    is raised and the caller should integrate the ODE instead.
    """
    if direction not in (FORWARD, BACKWARD):
        raise ValueError(f"direction must be '{FORWARD}' or '{BACKWARD}'")
    th0, ph0 = initial.theta, initial.phi
    if abs(math.cos(ph0)) < 1e-12 or abs(math.cos(th0)) < 1e-12:
        raise TangentBranchError("initial angles sit on a tangent branch boundary")
    s = +1.0 if direction == FORWARD else -1.0
    om, g = params.omega, params.gamma
    mu0 = math.tan(ph0)
    nu0 = math.tan(th0)

    q = s * g - om * mu0
    tp = _pole_time(params, q)
    if t >= tp * (1.0 - 1e-12):
        raise TangentBranchError(f"closed form leaves its branch at t = {tp:.6g} <= requested t = {t:.6g}")

    # shared kernels C = cosh(xi t), Sh = sinh(xi t)/xi (trig branch for omega > gamma)
    u = (g * g - om * om) * t * t
    if abs(u) < 1e-8:
        C = 1.0 + u / 2.0 + u * u / 24.0
        Sh = (1.0 + u / 6.0 + u * u / 120.0) * t
    elif u > 0:
        x = math.sqrt(u)
        C = math.cosh(x)
        Sh = math.sinh(x) / x * t
    else:
        x = math.sqrt(-u)
        C = math.cos(x)
        Sh = math.sin(x) / x * t

    mu = mu0 + (om - s * 2.0 * g * mu0 + om * mu0 * mu0) * Sh / (C + q * Sh)
    w = 1.0 + mu0 * mu0
    radicand = 1.0 + s * 2.0 * g * ((1.0 - mu0 * mu0) / w) * Sh * C + 2.0 * g * (g - s * 2.0 * om * mu0 / w) * Sh * Sh
    if radicand < 0.0:
        raise TangentBranchError("tangent closed form left its branch (negative radicand)")
    nu = nu0 * math.exp(s * g * t) * math.sqrt(radicand)
    if not (math.isfinite(mu) and math.isfinite(nu)) or max(abs(mu), abs(nu)) > _TANGENT_LIMIT:
        raise TangentBranchError("tangent magnitude exceeded 1e12; use the ODE route")

    # invert the tangents on the branch the initial angles live on
    phi = math.atan(mu) + math.pi * round((ph0 - math.atan(mu0)) / math.pi)
    theta = math.atan(nu) + math.pi * round((th0 - math.atan(nu0)) / math.pi)
    return BlochDirection(theta=theta, phi=phi)


@dataclass(frozen=True)
class FamilyTrajectory:
    """A family sampled on a time grid: raw angles plus the local flip rate.

    theta/phi are the raw integrated values (phi unwrapped, theta not folded);
    canonical representatives are available per sample via direction_at().
    """

    params: ModelParams
    direction: str
    times: np.ndarray
    theta: np.ndarray
    phi: np.ndarray
    kappa: np.ndarray

    @classmethod
    def integrate(cls, initial: BlochDirection, params: ModelParams, direction: str, times) -> "FamilyTrajectory":
        """Integrate the angle ODEs across a (sorted, t[0] >= 0) time grid."""
        times = np.asarray(times, dtype=float)
        if times.ndim != 1 or len(times) < 2 or np.any(np.diff(times) <= 0):
            raise ValueError("times must be a strictly increasing 1-D grid")
        init = _as_direction(initial)
        sol = solve_ivp(
            _ode_rhs(direction),
            (times[0], times[-1]),
            (init.theta, init.phi),
            args=(params.omega, params.gamma),
            method="DOP853",
            rtol=1e-11,
            atol=1e-12,
            t_eval=times,
        )
        if not sol.success:
            raise IntegrationError(f"family integration failed: {sol.message}")
        th, ph = sol.y
        nx = np.sin(th) * np.cos(ph)
        kap = params.gamma * (1.0 - nx * nx)
        return cls(params=params, direction=direction, times=times, theta=th, phi=ph, kappa=kap)

    def direction_at(self, t: float) -> BlochDirection:
        return BlochDirection(
            theta=float(np.interp(t, self.times, self.theta)),
            phi=float(np.interp(t, self.times, self.phi)),
        )

    def kappa_at(self, t) -> np.ndarray | float:
        return np.interp(t, self.times, self.kappa)

    def to_csv(self) -> str:
        lines = ["t,theta,phi,kappa"]
        for t, th, ph, k in zip(self.times, self.theta, self.phi, self.kappa):
            lines.append(f"{t:.17g},{th:.17g},{ph:.17g},{k:.17g}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class StationaryFamily:
    """One stationary diameter with its constant flip rate."""

    label: str  # 'z', 'dressed_x' or 'dressed_y'
    condition: str  # 'forward', 'backward' or 'both'
    direction: BlochDirection
    kappa: float


@dataclass(frozen=True)
class StationarySet:
    """All stationary families at the given parameters.

    equatorial holds 4 entries for gamma > omega (two dressed-x, two
    dressed-y), the 2 merged ones at gamma = omega, and none below.
    """

    params: ModelParams
    z_family: StationaryFamily
    equatorial: tuple = field(default_factory=tuple)

    @property
    def kappa_z(self) -> float:
        return self.z_family.kappa

    @property
    def kappa_x(self) -> float | None:
        # at the critical point the merged roots carry kx == ky == gamma/2
        for fam in self.equatorial:
            if fam.label in ("dressed_x", "merged"):
                return fam.kappa
        return None

    @property
    def kappa_y(self) -> float | None:
        for fam in self.equatorial:
            if fam.label in ("dressed_y", "merged"):
                return fam.kappa
        return None


def stationary_families(params: ModelParams) -> StationarySet:
    """Fixed points of the family flows.

    The z diameter (theta = 0) is stationary for every parameter choice, with
    kappa_z = gamma.  Equatorial fixed points solve sin 2 phi = +omega/gamma
    (forward) or -omega/gamma (backward) at theta = pi/2 and exist only for
    gamma >= omega.  kappa_x uses the cancellation-free form
    omega^2/(2 (gamma + xi)).
    """
    g, om = params.gamma, params.omega
    z = StationaryFamily(label="z", condition="both", direction=Z_DIRECTION, kappa=g)
    if g < om or g == 0.0:
        return StationarySet(params=params, z_family=z)
    xi = params.discriminant
    alpha = math.asin(om / g) if om < g else math.pi / 2.0
    kx = om * om / (2.0 * (g + xi))
    ky = (g + xi) / 2.0
    half = math.pi / 2.0
    entries = [
        StationaryFamily("dressed_x", FORWARD, BlochDirection(half, alpha / 2.0), kx),
        StationaryFamily("dressed_y", FORWARD, BlochDirection(half, half - alpha / 2.0), ky),
        StationaryFamily("dressed_y", BACKWARD, BlochDirection(half, half + alpha / 2.0), ky),
        StationaryFamily("dressed_x", BACKWARD, BlochDirection(half, math.pi - alpha / 2.0), kx),
    ]
    if params.regime == CRITICAL:
        # saddle-node point: the two forward roots coalesce at phi = pi/4 and
        # the two backward roots at 3 pi/4; each merged root keeps its sense
        entries = [
            StationaryFamily("merged", FORWARD, BlochDirection(half, math.pi / 4.0), kx),
            StationaryFamily("merged", BACKWARD, BlochDirection(half, 3.0 * math.pi / 4.0), ky),
        ]
    return StationarySet(params=params, z_family=z, equatorial=tuple(entries))


@dataclass(frozen=True)
class RegimeReport:
    """Qualitative character of the family flow at given parameters."""

    params: ModelParams
    regime: str
    gamma_over_omega: float
    rotation_frequency: float | None = None  # eta, underdamped only
    stroboscopic_period: float | None = None  # pi / eta
    decay_rates: tuple | None = None  # (gamma - xi, gamma + xi), overdamped only


def classify_regime(params: ModelParams) -> RegimeReport:
    ratio = params.gamma / params.omega if params.omega > 0 else math.inf
    if params.regime == UNDERDAMPED:
        eta = params.discriminant
        return RegimeReport(
            params=params,
            regime=params.regime,
            gamma_over_omega=ratio,
            rotation_frequency=eta,
            stroboscopic_period=math.pi / eta,
        )
    xi = params.discriminant
    slow = params.omega**2 / (params.gamma + xi) if (params.gamma + xi) > 0 else 0.0
    return RegimeReport(
        params=params,
        regime=params.regime,
        gamma_over_omega=ratio,
        decay_rates=(slow, params.gamma + xi),
    )


@dataclass(frozen=True)
class ConditionReport:
    """Result of a span-condition check along a decomposition sequence."""

    passed: bool
    max_residual: float
    residuals: tuple
    direction: str


def _span_residual(w: np.ndarray, target: np.ndarray) -> float:
    """Euclidean norm of the part of w orthogonal to the target diameter."""
    t = target / np.linalg.norm(target)
    return float(np.linalg.norm(w - (w @ t) * t))


def check_forward_condition(decomp_sequence, params: ModelParams, times, tol: float = 1e-8) -> ConditionReport:
    """Does T map each basis span into the next one?

    For consecutive instants the image of the earlier diameter under the
    3x3 Bloch block must be parallel to the later diameter; the residual is
    the Euclidean norm of the orthogonal component of that image.
    """
    dirs = [_as_direction(d) for d in decomp_sequence]
    times = np.asarray(times, dtype=float)
    if len(dirs) != len(times):
        raise ValueError("need one decomposition per time")
    resids = []
    for m in range(len(dirs) - 1):
        T3 = propagator_closed_form(params, float(times[m + 1] - times[m]))[1:, 1:]
        w = T3 @ dirs[m].unit_vector
        resids.append(_span_residual(w, dirs[m + 1].unit_vector))
    mx = max(resids) if resids else 0.0
    return ConditionReport(passed=mx < tol, max_residual=mx, residuals=tuple(resids), direction=FORWARD)


def check_backward_condition(decomp_sequence, params: ModelParams, times, tol: float = 1e-8) -> ConditionReport:
    """Adjoint-map variant: T^dag must pull each span back into the previous one.

    The adjoint superoperator of a PTM with respect to the Frobenius inner
    product is the transposed matrix in the Pauli basis, so the check applies
    T3^T to the later diameter and compares against the earlier one.
    """
    dirs = [_as_direction(d) for d in decomp_sequence]
    times = np.asarray(times, dtype=float)
    if len(dirs) != len(times):
        raise ValueError("need one decomposition per time")
    resids = []
    for m in range(len(dirs) - 1):
        T3 = propagator_closed_form(params, float(times[m + 1] - times[m]))[1:, 1:]
        w = T3.T @ dirs[m + 1].unit_vector
        resids.append(_span_residual(w, dirs[m].unit_vector))
    mx = max(resids) if resids else 0.0
    return ConditionReport(passed=mx < tol, max_residual=mx, residuals=tuple(resids), direction=BACKWARD)
