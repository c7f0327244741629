import math

import mpmath
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("lab", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("lab")

# independent reference values (mpmath, 30 digits)
ZETA_1_5 = 2.6123753486854883
ZETA_2_5 = 1.3414872572509172
ZETA_4 = math.pi ** 4 / 90
THREE_ZETA = 0.83323129553624536  # zeta(1.2) - 2 zeta(1.3) + zeta(1.4)
DIVISOR_SQ_1_5 = 38.745144143901321  # zeta(1.5)^4 / zeta(3)


def direct_zeta(x, N=200000):
    """sum_{n<=N} n^-x plus the integral tail N^{1-x}/(x-1) - N^-x/2 (direct summation oracle)."""
    s = math.fsum(n ** -x for n in range(1, N + 1))
    return s + N ** (1 - x) / (x - 1) - 0.5 * N ** -x


@pytest.fixture(scope="session")
def mp_zeta():
    def f(sigma, t):
        with mpmath.workdps(30):
            return complex(mpmath.zeta(mpmath.mpc(sigma, t)))
    return f
