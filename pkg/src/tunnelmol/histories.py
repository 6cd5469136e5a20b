"""Decoherence functional and consistency of multi-time histories.

A history assigns one projector from a decomposition {P^0_m, P^1_m} to each of
the times t_1 < ... < t_f.  With the collisional channel T carrying operators
between neighboring times, the decoherence functional is

    D(alpha, beta) = Tr[ P^{a_f}_f T( ... P^{a_2}_2 T( P^{a_1}_1 rho_0 P^{b_1}_1 ) P^{b_2}_2 ... ) P^{b_f}_f ].

Its diagonal holds the candidate probabilities W(alpha) = D(alpha, alpha);
the family is consistent when every off-diagonal entry is negligible, at
which point the weights obey classical probability sum rules and, for the
families produced by the forward/backward flows, form a Markov chain whose
per-step flip probabilities come from the local rate kappa.

Everything is evaluated in Pauli-coefficient space: sandwiching by projectors
and transport by the PTM are both linear maps on the complex coefficient
4-vector, so one level of the branching tree is four 4x4 matrix applications.
Multi-indices are packed little-endian: the outcome at t_1 is the least
significant bit of the row/column index.

Two classical utilities live here as well: extraction of per-step transition
matrices from a consistent family's weights, and averaging of
collision-count-conditioned transition matrices over the count distribution
(the coarse-graining that turns a collision-counting description into the
plain telegraph process).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .families import BlochDirection, FamilyTrajectory
from .ptm import ModelParams, PAULIS, operator_from_pauli, pauli_coefficients, propagator_closed_form

CONSISTENCY_TOL = 1e-8


class NotConsistentError(ValueError):
    """Operation requires a consistent family but the off-diagonals are too large."""


@dataclass(frozen=True)
class Decomposition:
    """A two-outcome projective decomposition of the qubit identity.

    projectors   (P0, P1) with P0 = (I + n.sigma)/2;  outcome bit 0 is the
                 projector along +n, bit 1 the one along -n.
    """

    projectors: tuple
    label: str = ""

    def __post_init__(self):
        P0, P1 = self.projectors
        if not np.allclose(P0 + P1, np.eye(2), atol=1e-10):
            raise ValueError("projectors must sum to the identity")
        for P in (P0, P1):
            if not np.allclose(P, P.conj().T, atol=1e-10) or not np.allclose(P @ P, P, atol=1e-10):
                raise ValueError("decomposition entries must be Hermitian projectors")

    @property
    def bloch_direction(self) -> BlochDirection:
        n = 2.0 * pauli_coefficients(self.projectors[0])[1:].real
        return BlochDirection.from_vector(n)

    @classmethod
    def from_direction(cls, direction, label: str = "") -> "Decomposition":
        if not isinstance(direction, BlochDirection):
            direction = BlochDirection.from_vector(direction)
        n = direction.unit_vector
        P0 = operator_from_pauli(np.array([1.0, *n]) / 2.0)
        P1 = operator_from_pauli(np.array([1.0, *(-n)]) / 2.0)
        return cls(projectors=(P0, P1), label=label)

    @classmethod
    def x_basis(cls) -> "Decomposition":
        return cls.from_direction(np.array([1.0, 0.0, 0.0]), label="x")

    @classmethod
    def y_basis(cls) -> "Decomposition":
        return cls.from_direction(np.array([0.0, 1.0, 0.0]), label="y")

    @classmethod
    def z_basis(cls) -> "Decomposition":
        return cls.from_direction(np.array([0.0, 0.0, 1.0]), label="z")


@dataclass(frozen=True)
class HistoryFamily:
    """Times plus one decomposition per time (f >= 1).

    Warns, but proceeds, when a gap is shorter than the collision correlation
    time tau_c: the Markovian channel between those instants is then of
    doubtful physical meaning, though still perfectly computable.
    """

    params: ModelParams
    times: np.ndarray
    decompositions: tuple

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        object.__setattr__(self, "times", times)
        if times.ndim != 1 or len(times) < 1:
            raise ValueError("need at least one history time")
        if np.any(np.diff(times) <= 0):
            raise ValueError("history times must be strictly increasing")
        if len(self.decompositions) != len(times):
            raise ValueError("need exactly one decomposition per time")
        if self.params.tau_c > 0 and len(times) > 1:
            gap = float(np.min(np.diff(times)))
            if gap < self.params.tau_c:
                warnings.warn(
                    f"history gap {gap:.3g} is below the collision correlation time "
                    f"tau_c = {self.params.tau_c:.3g}; treat the result with care",
                    stacklevel=2,
                )

    @property
    def f(self) -> int:
        return len(self.times)

    @classmethod
    def from_trajectory(cls, traj: FamilyTrajectory, times) -> "HistoryFamily":
        """Sample a moving-basis family at the given instants."""
        times = np.asarray(times, dtype=float)
        decomps = tuple(Decomposition.from_direction(traj.direction_at(t)) for t in times)
        return cls(params=traj.params, times=times, decompositions=decomps)


@dataclass(frozen=True)
class DecoherenceMatrix:
    """The full 2^f x 2^f decoherence functional of a family."""

    family: HistoryFamily
    entries: np.ndarray

    @property
    def f(self) -> int:
        return self.family.f

    @property
    def weights(self) -> np.ndarray:
        """Candidate history probabilities (the real diagonal)."""
        return np.real(np.diag(self.entries))

    @property
    def max_offdiag(self) -> float:
        off = self.entries - np.diag(np.diag(self.entries))
        return float(np.abs(off).max()) if off.size > 1 else 0.0

    def label(self, index: int) -> tuple:
        """Outcome bits (a_1, ..., a_f), little-endian in the index."""
        return tuple((index >> m) & 1 for m in range(self.f))

    def to_csv(self) -> str:
        lines = ["row,col,real,imag"]
        n = self.entries.shape[0]
        for i in range(n):
            for j in range(n):
                z = self.entries[i, j]
                lines.append(f"{i},{j},{z.real:.17g},{z.imag:.17g}")
        return "\n".join(lines) + "\n"


def _left_mult(P: np.ndarray) -> np.ndarray:
    """Coefficient-space matrix of M -> P M."""
    return np.column_stack([pauli_coefficients(P @ s) for s in PAULIS])


def _right_mult(P: np.ndarray) -> np.ndarray:
    """Coefficient-space matrix of M -> M P."""
    return np.column_stack([pauli_coefficients(s @ P) for s in PAULIS])


def _coerce_initial(initial) -> np.ndarray:
    """Accept None (maximally mixed), a Bloch 3-vector, or a 2x2 density operator."""
    if initial is None:
        return np.eye(2, dtype=complex) / 2.0
    arr = np.asarray(initial)
    if arr.shape == (3,):
        return operator_from_pauli(np.array([1.0, *arr.astype(float)]) / 2.0)
    if arr.shape == (2, 2):
        return arr.astype(complex)
    raise ValueError("initial state must be None, a Bloch vector, or a 2x2 operator")


def decoherence_functional(family: HistoryFamily, initial=None) -> DecoherenceMatrix:
    """Evaluate D(alpha, beta) for every pair of histories of the family.

    Cost grows as 4^f; f is capped at 10, which keeps the final level around a
    million coefficient vectors.
    """
    if family.f > 10:
        raise ValueError("history families are capped at f = 10 times")
    rho0 = _coerce_initial(initial)
    A = pauli_coefficients(rho0).reshape(1, 1, 4)
    for m in range(family.f):
        if m > 0:
            dt = float(family.times[m] - family.times[m - 1])
            A = A @ propagator_closed_form(family.params, dt).T
        P0, P1 = family.decompositions[m].projectors
        L = (_left_mult(P0), _left_mult(P1))
        R = (_right_mult(P0), _right_mult(P1))
        K = A.shape[0]
        nxt = np.empty((2 * K, 2 * K, 4), dtype=complex)
        for a in range(2):
            for b in range(2):
                nxt[a * K : (a + 1) * K, b * K : (b + 1) * K, :] = A @ (L[a] @ R[b]).T
        A = nxt
    return DecoherenceMatrix(family=family, entries=2.0 * A[:, :, 0])


@dataclass(frozen=True)
class ConsistencyReport:
    """Outcome of a consistency check on a decoherence matrix."""

    passed: bool
    max_offdiag: float
    tol: float
    weights: np.ndarray
    total_weight: float

    def normalized_weights(self) -> np.ndarray:
        return self.weights / self.total_weight


def consistency_check(D: DecoherenceMatrix, tol: float = CONSISTENCY_TOL) -> ConsistencyReport:
    """Consistent iff every off-diagonal magnitude is below tol.

    Also validates that the matrix is Hermitian and its diagonal real
    and non-negative up to roundoff, which any decoherence functional of a
    positive initial state must satisfy.
    """
    E = D.entries
    if not np.allclose(E, E.conj().T, atol=1e-10):
        raise ValueError("decoherence matrix is not Hermitian")
    w = D.weights
    if w.min() < -1e-10:
        raise ValueError("negative history weight beyond roundoff")
    return ConsistencyReport(
        passed=D.max_offdiag < tol,
        max_offdiag=D.max_offdiag,
        tol=tol,
        weights=np.clip(w, 0.0, None),
        total_weight=float(w.sum()),
    )


@dataclass(frozen=True)
class MarkovChain:
    """Initial distribution and per-step column-stochastic transition matrices."""

    initial_distribution: np.ndarray
    transitions: tuple
    factorization_error: float


def markov_from_family(family: HistoryFamily, initial=None, tol: float = CONSISTENCY_TOL) -> MarkovChain:
    """Extract the classical chain hiding in a consistent family's weights.

    Transition matrices are column-stochastic, M[k, j] = P(next = k | now = j).
    factorization_error is the largest deviation between the family weights
    and the product form p_1 * prod_m M_m, which vanishes for Markovian
    families (all the families this package constructs).  Raises
    NotConsistentError when the family fails the consistency check.
    """
    D = decoherence_functional(family, initial)
    report = consistency_check(D, tol)
    if not report.passed:
        raise NotConsistentError(
            f"family is not consistent: max off-diagonal {report.max_offdiag:.3e} >= {tol:.0e}"
        )
    w = report.normalized_weights()
    f = family.f
    shape = (2,) * f
    W = w.reshape(shape, order="F")  # little-endian: first axis = first time
    p1 = W.reshape(2, -1).sum(axis=1) if f > 1 else W.copy()
    if f == 1:
        return MarkovChain(initial_distribution=p1, transitions=(), factorization_error=0.0)
    transitions = []
    axes = tuple(range(f))
    for m in range(f - 1):
        pair = W.sum(axis=tuple(a for a in axes if a not in (m, m + 1)))  # shape (2, 2): [now, next]
        now = pair.sum(axis=1)
        M = np.zeros((2, 2))
        for j in range(2):
            if now[j] > 1e-15:
                M[:, j] = pair[j, :] / now[j]
            else:
                M[:, j] = 0.5  # unreachable state: convention only
        transitions.append(M)
    # reconstruct the joint and measure the Markov factorization defect
    rec = np.zeros(shape)
    for idx in np.ndindex(*shape):
        p = p1[idx[0]]
        for m in range(f - 1):
            p *= transitions[m][idx[m + 1], idx[m]]
        rec[idx] = p
    err = float(np.abs(rec - W).max())
    return MarkovChain(initial_distribution=p1, transitions=tuple(transitions), factorization_error=err)


def classical_collision_average(markov_by_count, count_dist) -> np.ndarray:
    """Average count-conditioned transition matrices over the count distribution.

    markov_by_count[n] is the column-stochastic matrix given exactly n
    collisions in the interval; count_dist[n] their probabilities.  Because
    counts in disjoint intervals are independent, chaining intervals commutes
    with this average, which the tests verify by exhaustive enumeration.
    """
    Ms = [np.asarray(M, dtype=float) for M in markov_by_count]
    pr = np.asarray(count_dist, dtype=float)
    if len(Ms) != len(pr):
        raise ValueError("need one probability per matrix")
    if abs(pr.sum() - 1.0) > 1e-9 or pr.min() < -1e-12:
        raise ValueError("count distribution must be a probability vector")
    shape = Ms[0].shape
    for M in Ms:
        if M.shape != shape:
            raise ValueError("transition matrices must share one shape")
        if np.any(M < -1e-12) or not np.allclose(M.sum(axis=0), 1.0, atol=1e-9):
            raise ValueError("matrices must be column-stochastic")
    out = np.zeros(shape)
    for p, M in zip(pr, Ms):
        out += p * M
    return out


def telegraph_flip_probability(params: ModelParams, dt: float) -> float:
    """Exact z-family flip probability over a gap, (1 - e^{-2 gamma dt})/2."""
    return 0.5 * (1.0 - math.exp(-2.0 * params.gamma * dt))
