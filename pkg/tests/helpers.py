"""Shared construction helpers for the test suite."""

from biphoton import PhasematchSpec, PumpSpec

OMEGA0 = 1.227134571536712e15


def make_pm(tau_s, tau_i, gamma=0.193, profile="gaussian", length=8e-3):
    return PhasematchSpec(
        length_L=length,
        tau_s=tau_s,
        tau_i=tau_i,
        omega_s0=OMEGA0,
        omega_i0=OMEGA0,
        gamma=gamma,
        profile=profile,
    )


def make_pump(sigma, beta=0.0):
    return PumpSpec(omega_p0=2 * OMEGA0, sigma_p=sigma, beta=beta)


def random_source(rng, profile="gaussian"):
    """Random physical source parameters.

    Walk-offs closer than 0.4 ps are rejected: the amplitude then becomes so
    eccentric that a 512-point grid cannot resolve its narrow axis, which is
    the regime the phasematch type excludes as degenerate anyway.
    """
    sigma = 10 ** rng.uniform(11.9, 13.0)
    while True:
        tau_s = rng.uniform(0.3e-12, 2e-12) * rng.choice([-1.0, 1.0])
        tau_i = rng.uniform(0.3e-12, 2e-12) * rng.choice([-1.0, 1.0])
        if abs(tau_s - tau_i) >= 4e-13:
            break
    gamma = rng.uniform(0.1, 1.0)
    beta = rng.uniform(-1e-26, 1e-26)
    return make_pump(sigma, beta), make_pm(tau_s, tau_i, gamma, profile)
