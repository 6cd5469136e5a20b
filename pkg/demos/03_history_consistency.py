"""Decoherence matrices: when does a sequence of measurements tell a story?

A multi-time family of projective decompositions earns classical
probabilities only if its decoherence matrix is diagonal.  Three cases below:

* the pointer basis (z) is consistent at any set of times,
* a static transverse basis is not, unless the initial state is maximally
  mixed or the times are chosen stroboscopically,
* a transported basis that rides the family flow is consistent by design,
  and its history weights factor into a classical Markov chain.
"""

import math

import numpy as np

from tunnelmol import (
    BACKWARD,
    Decomposition,
    FORWARD,
    HistoryFamily,
    ModelParams,
    consistency_check,
    decoherence_functional,
    exact_direction,
    markov_from_family,
    telegraph_flip_probability,
)

UP = np.array([0.0, 0.0, 1.0])


def verdict(family: HistoryFamily, initial=None, note: str = "") -> None:
    report = consistency_check(decoherence_functional(family, initial))
    tag = "consistent" if report.passed else "NOT consistent"
    print(f"  {note:<38} max off-diagonal {report.max_offdiag:.3e}  -> {tag}")


def main() -> None:
    params = ModelParams(omega=1.0, gamma=0.5)
    times = np.array([0.0, 0.8, 1.6])

    print("static bases, pure 'up' start:")
    for basis, maker in (("z", Decomposition.z_basis), ("x", Decomposition.x_basis)):
        family = HistoryFamily(
            params=params, times=times, decompositions=tuple(maker() for _ in times)
        )
        verdict(family, UP, f"{basis} basis at t = 0, 0.8, 1.6")

    # below critical damping the coherent beat has a hidden clock: sampling
    # the x basis at multiples of pi/eta removes the interference exactly
    eta = params.discriminant
    strobe = np.array([0.0, math.pi / eta, 2.0 * math.pi / eta])
    family = HistoryFamily(
        params=params, times=strobe, decompositions=tuple(Decomposition.x_basis() for _ in strobe)
    )
    verdict(family, UP, f"x basis at multiples of pi/eta = {math.pi / eta:.3f}")

    print("\ntransported bases (family flow images of a tilted start):")
    start = Decomposition.x_basis().bloch_direction
    for sense, initial, note in (
        (FORWARD, None, "forward transport, mixed start"),
        (BACKWARD, UP, "backward transport, pure start"),
    ):
        decomps = tuple(
            Decomposition.from_direction(exact_direction(start, params, sense, t)) for t in times
        )
        family = HistoryFamily(params=params, times=times, decompositions=decomps)
        verdict(family, initial, note)

    print("\nclassical readout of the pointer family:")
    z_times = np.array([0.0, 0.6, 1.2, 1.8])
    family = HistoryFamily(
        params=params, times=z_times, decompositions=tuple(Decomposition.z_basis() for _ in z_times)
    )
    chain = markov_from_family(family, UP)
    print(f"  initial distribution: {np.array2string(chain.initial_distribution, precision=4)}")
    q = telegraph_flip_probability(params, 0.6)
    print(f"  flip probability per 0.6 step: {q:.6f} (telegraph value)")
    for k, M in enumerate(chain.transitions):
        print(f"  step {k}: off-diagonal {M[1, 0]:.6f}, factorization checks out")
    print(f"  worst factorization error over all histories: {chain.factorization_error:.2e}")


if __name__ == "__main__":
    main()
