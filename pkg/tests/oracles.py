"""Independent brute-force oracles and the reference values frozen from them.

The oracles deliberately avoid the library's streaming/truncation code:
plain numpy array sums over an explicit n range, shifted by the max
exponent.  The FROZEN constants were produced by 60-digit mpmath
recomputations of the same sums (and, for the error function, adaptive
quadrature of its defining integral); regenerate() reproduces them.
"""

import math

import numpy as np

from ring_thermo.model import level_offset

FROZEN = {
    # direct sum, omega=1, anisotropic xi=0, beta=1 (converged by n <= 10)
    "z1_xi0_beta1": 3.1405166459980945,
    "log_z1_xi0_beta1": 1.1443873233275123,
    # 2/sqrt(pi) * integral_0^1 exp(-t^2) dt
    "erf_1": 0.8427007929497149,
    # canonical spin current, omega=1, m*r0=1, anisotropic xi=0.6, T=0.3, n <= 200
    "canonical_j_xi06_t03": -0.04021513417014252,
    # grand potential, omega=1, anisotropic xi=0, T=0.4, mu=0.1, n <= 500
    "grand_phi_xi0_t04_mu01": -0.7810460411486971,
}


def level_grid(model, coupling, n_max):
    """Energies for n=0..n_max as an (n_max+1, 2) array, plain numpy."""
    n = np.arange(n_max + 1, dtype=float)
    offs = np.array([level_offset(coupling, 1), level_offset(coupling, 2)])
    return model.omega * (n[:, None] + offs[None, :]) ** 2


def brute_log_z(model, coupling, beta, n_max=400):
    e = level_grid(model, coupling, n_max).ravel()
    x = -beta * e
    m = x.max()
    return m + math.log(np.exp(x - m).sum())


def brute_moments(model, coupling, beta, n_max=400):
    e = level_grid(model, coupling, n_max).ravel()
    x = -beta * e
    w = np.exp(x - x.max())
    z = w.sum()
    return (e * w).sum() / z, (e * e * w).sum() / z


def brute_n_mean(model, coupling, beta, n_max=400):
    e = level_grid(model, coupling, n_max)
    x = -beta * e
    w = np.exp(x - x.max())
    n = np.arange(n_max + 1, dtype=float)
    return (n * w.sum(axis=1)).sum() / w.sum()


def brute_grand_potential(model, coupling, T, mu, n_max=500):
    e = level_grid(model, coupling, n_max)
    return -T * np.logaddexp(0.0, -(e - mu) / T).sum()


def regenerate():  # pragma: no cover - development helper
    """Recompute FROZEN at 60 digits; prints values for manual comparison."""
    from mpmath import mp, atan, cos, exp, log, mpf, pi, quad, sqrt

    mp.dps = 60

    def z1(beta, xi, nmax):
        r = sqrt(1 + 4 * mpf(xi) ** 2)
        tot = mpf(0)
        for n in range(nmax + 1):
            for d in (1 - r, 1 + r):
                tot += exp(-beta * (n - d / 2) ** 2)
        return tot

    z = z1(mpf(1), 0, 60)
    print("z1_xi0_beta1 =", mp.nstr(z, 17))
    print("log_z1_xi0_beta1 =", mp.nstr(log(z), 17))
    print("erf_1 =", mp.nstr(2 / sqrt(pi) * quad(lambda t: exp(-t ** 2), [0, 1]), 17))

    beta, xi = 1 / mpf("0.3"), mpf("0.6")
    r = sqrt(1 + 4 * xi ** 2)
    zt, num = mpf(0), mpf(0)
    for n in range(201):
        for d in (1 - r, 1 + r):
            w = exp(-beta * (n - d / 2) ** 2)
            zt += w
            num += n * w
    j = (2 * (num / zt) * cos(atan(2 * xi)) - 1) / 4
    print("canonical_j_xi06_t03 =", mp.nstr(j, 17))

    beta = 1 / mpf("0.4")
    tot = mpf(0)
    for n in range(501):
        for d in (mpf(0), mpf(2)):
            tot += log(1 + exp(-beta * ((n - d / 2) ** 2 - mpf("0.1"))))
    print("grand_phi_xi0_t04_mu01 =", mp.nstr(-tot / beta, 17))


if __name__ == "__main__":  # pragma: no cover
    regenerate()
