"""Independent reference computations used by the test suite."""
import math

import numpy as np


def normal_shock_oracle(beta, eps, E0=1.0):
    """Solve the three normal-direction jump laws from scratch.

    Unknowns (rho, u, p) behind the shock; upstream rho0 = 1, u0 = -sin(beta).
    Eliminating rho and p leaves a quadratic in u whose roots are u0 (no jump)
    and the shocked value.
    """
    kappa = eps / (eps + 1.0)
    Ep = E0 - 0.5
    p0 = kappa * Ep
    m = -math.sin(beta)  # mass flux rho0*u0
    # ((m^2+p0)/(kappa m)) u - u^2/kappa + u^2/2 - p0/kappa - m^2/2 = 0
    a = 0.5 - 1.0 / kappa
    b = (m * m + p0) / (kappa * m)
    c = -p0 / kappa - 0.5 * m * m
    roots = np.roots([a, b, c]).real
    u = roots[np.argmax(np.abs(roots - m))]
    rho = m / u
    p = m * m + p0 - m * u
    return rho, u, p
