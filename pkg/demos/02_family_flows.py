"""Follow measurement-direction flows on the Bloch sphere.

A record-keeping basis that wants to stay classical has to move: its
direction obeys a flow whose character changes with gamma/omega.  Below the
critical ratio the azimuth winds forever at the beat frequency; above it the
azimuth locks onto a stationary root.  The polar angle always relaxes to the
equator forward in time and to a pole backward in time.
"""

import math

import numpy as np

from tunnelmol import (
    BACKWARD,
    BlochDirection,
    FORWARD,
    FamilyTrajectory,
    ModelParams,
    stationary_families,
    transition_rate,
)

START = BlochDirection(theta=0.2, phi=0.0)


def flow_summary(gamma: float) -> FamilyTrajectory:
    params = ModelParams(omega=1.0, gamma=gamma)
    grid = np.linspace(0.0, 25.0, 2501)
    traj = FamilyTrajectory.integrate(START, params, FORWARD, grid)
    print(f"\ngamma = {gamma} ({params.regime})")
    print(f"  theta: {traj.theta[0]:.3f} -> {traj.theta[-1]:.6f} (pi/2 = {math.pi / 2:.6f})")
    if params.regime == "underdamped":
        speed = (traj.phi[-1] - traj.phi[0]) / 25.0
        eta = params.discriminant
        print(f"  azimuth winds at {speed:.4f} rad per unit time (beat frequency {eta:.4f})")
    else:
        stat = stationary_families(params)
        roots = [f for f in stat.equatorial if f.condition == FORWARD]
        print(f"  azimuth settles at {traj.phi[-1]:.6f}; forward roots at "
              + ", ".join(f"{f.direction.phi:.6f}" for f in roots))
    rate_now = transition_rate(traj.direction_at(25.0), params)
    print(f"  flip rate along the flow at t = 25: {rate_now:.6f} (ceiling gamma = {gamma})")
    return traj


def main() -> None:
    trajs = {g: flow_summary(g) for g in (0.5, 1.2, 4.0)}

    # backward flows drain toward the poles instead
    params = ModelParams(omega=1.0, gamma=0.5)
    grid = np.linspace(0.0, 20.0, 2001)
    back = FamilyTrajectory.integrate(START, params, BACKWARD, grid)
    print(f"\nbackward flow from theta = 0.2: theta(20) = {back.theta[-1]:.2e} (pole)")

    print("\nstationary set at gamma = 2.5, omega = 1:")
    stat = stationary_families(ModelParams(omega=1.0, gamma=2.5))
    for fam in (stat.z_family, *stat.equatorial):
        d = fam.direction
        print(f"  {fam.label:>9} [{fam.condition:>8}]  theta = {d.theta:.4f}  "
              f"phi = {d.phi:.4f}  kappa = {fam.kappa:.6f}")
    print(f"  rate hierarchy: kappa_x = {stat.kappa_x:.6f} <= kappa_y = {stat.kappa_y:.6f} "
          f"<= kappa_z = {stat.kappa_z:.6f}")

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("\nmatplotlib not installed; skipping the flow plot")
        return

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    for g, traj in trajs.items():
        ax1.plot(traj.times, traj.theta, label=f"gamma = {g}")
        ax2.plot(traj.times, traj.phi, label=f"gamma = {g}")
    ax1.axhline(math.pi / 2, color="k", lw=0.5, ls="--")
    ax1.set_xlabel("t")
    ax1.set_ylabel("polar angle")
    ax2.set_xlabel("t")
    ax2.set_ylabel("azimuth")
    ax1.legend()
    fig.tight_layout()
    fig.savefig("demo02_flows.png", dpi=150)
    print("\nwrote demo02_flows.png")


if __name__ == "__main__":
    main()
