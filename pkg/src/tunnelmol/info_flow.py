"""Information bookkeeping: what the future learns, what the environment takes.

All quantities are in bits.  The central object is the Holevo information of
a two-state ensemble fed through a channel: prepare the molecule in one arm
of a decomposition (equal priors), transmit with the collisional channel T
or leak through its complementary channel, and ask how distinguishable the
outputs remain.  For this unital qubit model the direct quantity has the
closed form 1 - h2((1 + |n'|)/2) with n' the transported Bloch direction,
which the tests use as an independent check on the definition-based route
implemented here.

Three structural facts get dedicated verifiers:

  * records are faithful: for a family whose later basis is the forward flow
    image of the first one, the classical mutual information between first
    and last outcome equals the Holevo information of the connecting channel;
  * complementarity: for mutually unbiased bases the direct information
    about one basis plus the leaked information about the other cannot
    exceed one bit;
  * purity proxy: the quadratic measure (1/2) Tr[ T(sigma_W)^2 ] shares the
    qualitative flow pattern and has simple initial slopes, handy as a
    cheap cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import complementary_apply, complementary_channel
from .families import FORWARD, check_forward_condition, exact_direction
from .histories import Decomposition, HistoryFamily, consistency_check, decoherence_functional
from .ptm import ModelParams, apply_ptm, operator_from_pauli, propagator_closed_form

_LN2 = math.log(2.0)
_EIG_FLOOR = -1e-8


class ForwardConditionError(ValueError):
    """Supplied target basis is not the forward flow image of the source basis."""


def binary_entropy(p: float) -> float:
    """h2(p) in bits."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("probability out of range")
    if p in (0.0, 1.0):
        return 0.0
    return -(p * math.log2(p) + (1.0 - p) * math.log2(1.0 - p))


def von_neumann_entropy(rho: np.ndarray, base: float = 2.0) -> float:
    """S(rho); eigenvalues are clipped against roundoff, never against real negativity."""
    evals = np.linalg.eigvalsh(np.asarray(rho, dtype=complex))
    if evals.min() < _EIG_FLOOR:
        raise ValueError(f"state has negative eigenvalue {evals.min():.3e}")
    evals = np.clip(evals, 0.0, None)
    nz = evals[evals > 0]
    return float(-(nz * np.log(nz)).sum() / math.log(base))


@dataclass(frozen=True)
class InputEnsemble:
    """Equal-prior preparations to be sent through a channel."""

    priors: tuple
    states: tuple

    def __post_init__(self):
        if len(self.priors) != len(self.states):
            raise ValueError("one prior per state")
        if abs(sum(self.priors) - 1.0) > 1e-10:
            raise ValueError("priors must sum to one")

    @classmethod
    def from_decomposition(cls, decomposition: Decomposition) -> "InputEnsemble":
        return cls(priors=(0.5, 0.5), states=tuple(decomposition.projectors))


def holevo_chi(priors, states) -> float:
    """S(sum_j p_j rho_j) - sum_j p_j S(rho_j), in bits."""
    priors = [float(p) for p in priors]
    avg = sum(p * np.asarray(r, dtype=complex) for p, r in zip(priors, states))
    return von_neumann_entropy(avg) - sum(p * von_neumann_entropy(r) for p, r in zip(priors, states))


def _coerce_decomposition(basis) -> Decomposition:
    if isinstance(basis, Decomposition):
        return basis
    if isinstance(basis, str):
        try:
            return {"x": Decomposition.x_basis, "y": Decomposition.y_basis, "z": Decomposition.z_basis}[basis]()
        except KeyError:
            raise ValueError(f"unknown basis name {basis!r}") from None
    return Decomposition.from_direction(basis)


def holevo_direct(basis, params: ModelParams, t: float) -> float:
    """Information about the basis record still held by the molecule after t."""
    ens = InputEnsemble.from_decomposition(_coerce_decomposition(basis))
    T = propagator_closed_form(params, t)
    outs = [apply_ptm(T, rho) for rho in ens.states]
    return holevo_chi(ens.priors, outs)


def holevo_complementary(basis, params: ModelParams, t: float) -> float:
    """Information about the basis record carried off by the collisions up to t."""
    ens = InputEnsemble.from_decomposition(_coerce_decomposition(basis))
    comp = complementary_channel(propagator_closed_form(params, t))
    outs = [complementary_apply(comp, rho) for rho in ens.states]
    return holevo_chi(ens.priors, outs)


def entropy_exchange(params: ModelParams, t: float, initial=None) -> float:
    """Entropy picked up by a fresh environment over [0, t], in bits.

    Equals the von Neumann entropy of the complementary channel's output for
    the given initial state (maximally mixed by default).
    """
    if initial is None:
        initial = np.eye(2, dtype=complex) / 2.0
    comp = complementary_channel(propagator_closed_form(params, t))
    return von_neumann_entropy(complementary_apply(comp, np.asarray(initial, dtype=complex)))


def mutual_information_family(family: HistoryFamily, initial=None, tol: float = 1e-8) -> float:
    """Classical mutual information between the two records of a two-time family.

    Requires f = 2 and a consistent family; the weights then form a genuine
    joint distribution over the four outcome pairs.
    """
    if family.f != 2:
        raise ValueError("mutual information needs exactly two history times")
    D = decoherence_functional(family, initial)
    report = consistency_check(D, tol)
    if not report.passed:
        raise ValueError(
            f"family is not consistent (max off-diagonal {report.max_offdiag:.3e}); "
            "its weights are not a joint distribution"
        )
    w = report.normalized_weights()
    joint = w.reshape(2, 2, order="F")  # [first outcome, second outcome]
    p1 = joint.sum(axis=1)
    p2 = joint.sum(axis=0)
    mi = 0.0
    for i in range(2):
        for j in range(2):
            if joint[i, j] > 0:
                mi += joint[i, j] * math.log2(joint[i, j] / (p1[i] * p2[j]))
    return mi


@dataclass(frozen=True)
class InformationIdentityReport:
    """Classical record information versus the quantum channel bound."""

    mutual_info: float
    holevo: float
    residual: float
    passed: bool


def verify_family_information_identity(
    basis,
    params: ModelParams,
    t: float,
    target=None,
    tol: float = 1e-8,
) -> InformationIdentityReport:
    """Check that a forward family's records carry exactly the Holevo information.

    The second-time basis defaults to the forward flow image of the first;
    a caller-supplied target is accepted only after passing the forward span
    condition, otherwise ForwardConditionError is raised.  The residual is
    |I(record_1 : record_2) - holevo_direct| and should sit at roundoff.
    """
    d0 = _coerce_decomposition(basis)
    if t <= 0:
        raise ValueError("need a positive time separation")
    if target is None:
        moved = exact_direction(d0.bloch_direction, params, FORWARD, t)
        d1 = Decomposition.from_direction(moved)
    else:
        d1 = _coerce_decomposition(target)
        cond = check_forward_condition([d0, d1], params, np.array([0.0, t]))
        if not cond.passed:
            raise ForwardConditionError(
                f"target basis misses the forward flow image by {cond.max_residual:.3e}"
            )
    family = HistoryFamily(params=params, times=np.array([0.0, t]), decompositions=(d0, d1))
    mi = mutual_information_family(family)
    hol = holevo_direct(d0, params, t)
    residual = abs(mi - hol)
    return InformationIdentityReport(mutual_info=mi, holevo=hol, residual=residual, passed=residual < tol)


@dataclass(frozen=True)
class MubBoundReport:
    """Direct plus leaked information for a mutually unbiased pair."""

    holevo_direct: float
    holevo_complementary: float
    slack: float
    passed: bool


def mub_bound_check(basis, conjugate_basis, params: ModelParams, t: float) -> MubBoundReport:
    """For mutually unbiased bases, direct + leaked information <= 1 bit.

    Validates unbiasedness first: every cross overlap Tr(P_i Q_j) must equal
    one half.  slack = 1 - holevo_direct(basis) - holevo_complementary(conjugate).
    """
    d1 = _coerce_decomposition(basis)
    d2 = _coerce_decomposition(conjugate_basis)
    for P in d1.projectors:
        for Q in d2.projectors:
            if abs(np.trace(P @ Q).real - 0.5) > 1e-10:
                raise ValueError("bases are not mutually unbiased")
    direct = holevo_direct(d1, params, t)
    leaked = holevo_complementary(d2, params, t)
    slack = 1.0 - direct - leaked
    return MubBoundReport(
        holevo_direct=direct,
        holevo_complementary=leaked,
        slack=slack,
        passed=slack > -1e-9,
    )


def quadratic_information(basis, params: ModelParams, t: float, which: str = "direct"):
    """Purity-based proxy (1/2) Tr[ channel(sigma_W)^2 ] and its initial slope.

    sigma_W = n . sigma for the basis direction n.  Returns (value at t,
    slope at t = 0); the slope uses a second order one-sided difference so
    no negative times are ever required.
    """
    direction = _coerce_decomposition(basis).bloch_direction
    sigma_w = operator_from_pauli(np.array([0.0, *direction.unit_vector]))

    if which == "direct":
        def f(s: float) -> float:
            out = apply_ptm(propagator_closed_form(params, s), sigma_w)
            return 0.5 * float(np.trace(out @ out).real)
    elif which == "complementary":
        def f(s: float) -> float:
            comp = complementary_channel(propagator_closed_form(params, s))
            out = complementary_apply(comp, sigma_w)
            return 0.5 * float(np.trace(out @ out).real)
    else:
        raise ValueError("which must be 'direct' or 'complementary'")

    h = 1e-6
    slope = (-3.0 * f(0.0) + 4.0 * f(h) - f(2.0 * h)) / (2.0 * h)
    return f(float(t)), slope


def short_time_leak_model(params: ModelParams, t: float) -> float:
    """Leading small-time behavior of the leaked information, in bits.

    The environment picks up g t ln(1/(g t)) + g t nats (g the collision
    rate) before oscillation corrections kick in.
    """
    x = params.gamma * t
    if x <= 0:
        return 0.0
    return (x * math.log(1.0 / x) + x) / _LN2


@dataclass(frozen=True)
class InfoReport:
    """Named information curves on a common time grid."""

    params: ModelParams
    times: np.ndarray
    curves: dict

    def cross_equality_residual(self) -> float:
        """Largest gap between the two direct-plus-leaked pairings of x and z."""
        return float(np.abs(self.curves["sum_zx"] - self.curves["sum_xz"]).max())

    def to_csv(self) -> str:
        keys = list(self.curves)
        lines = ["t," + ",".join(keys)]
        for k, t in enumerate(self.times):
            row = ",".join(f"{self.curves[key][k]:.17g}" for key in keys)
            lines.append(f"{t:.17g},{row}")
        return "\n".join(lines) + "\n"


def build_info_report(params: ModelParams, times, family_basis=None) -> InfoReport:
    """Evaluate the standard information curves on a grid.

    Curves: direct and leaked Holevo information for the x and z bases, the
    two cross pairings sum_zx = z_direct + x_leaked and sum_xz = x_direct +
    z_leaked (equal for this model), and the quadratic proxies.  When
    family_basis is given, a mutual_info column tracks the two-time forward
    family rooted at that basis.
    """
    times = np.asarray(times, dtype=float)
    if np.any(times < 0):
        raise ValueError("times must be non-negative")
    n = len(times)
    cols = {
        name: np.empty(n)
        for name in (
            "chi_x_direct", "chi_z_direct", "chi_x_comp", "chi_z_comp",
            "sum_zx", "sum_xz", "quad_z_direct", "quad_x_comp",
        )
    }
    if family_basis is not None:
        cols["mutual_info"] = np.empty(n)
        fam_decomp = _coerce_decomposition(family_basis)
    for k, t in enumerate(times):
        xd = holevo_direct("x", params, t)
        zd = holevo_direct("z", params, t)
        xc = holevo_complementary("x", params, t)
        zc = holevo_complementary("z", params, t)
        cols["chi_x_direct"][k] = xd
        cols["chi_z_direct"][k] = zd
        cols["chi_x_comp"][k] = xc
        cols["chi_z_comp"][k] = zc
        cols["sum_zx"][k] = zd + xc
        cols["sum_xz"][k] = xd + zc
        cols["quad_z_direct"][k] = quadratic_information("z", params, t, "direct")[0]
        cols["quad_x_comp"][k] = quadratic_information("x", params, t, "complementary")[0]
        if family_basis is not None:
            if t == 0.0:
                cols["mutual_info"][k] = holevo_direct(fam_decomp, params, 0.0)
            else:
                cols["mutual_info"][k] = verify_family_information_identity(
                    fam_decomp, params, t
                ).mutual_info
    return InfoReport(params=params, times=times, curves=cols)


def unital_holevo_closed_form(transported_length: float) -> float:
    """1 - h2((1 + r)/2) for a unital qubit channel with output radius r."""
    if not 0.0 <= transported_length <= 1.0 + 1e-12:
        raise ValueError("transported Bloch length out of range")
    r = min(transported_length, 1.0)
    return 1.0 - binary_entropy(0.5 * (1.0 + r))
