import random
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from vlab.fields import parse_field
from vlab.poly import Poly

settings.register_profile(
    "vlab",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("vlab")

FIELD_SPECS = [
    "qp:5",
    "qp:2",
    "quad:d=-1,p=5,r0=2",
    "quad:d=-1,p=5,r0=3",
    "quad:d=-1,p=3",
    "quad:d=3,p=3",
    "tadic",
    "hahn",
    "hahn:fp=3",
]


@pytest.fixture(params=FIELD_SPECS)
def field(request):
    return parse_field(request.param)


def random_poly(F, rng: random.Random, max_deg: int = 4, integral: bool = False) -> Poly:
    deg = rng.randint(0, max_deg)
    return Poly(F, [F.random_element(rng, integral=integral) for _ in range(deg + 1)])


def nonzero_poly(F, rng, max_deg=4):
    while True:
        f = random_poly(F, rng, max_deg)
        if not f.is_zero():
            return f


def vp_int(n: int, p: int) -> int:
    """Plain p-adic order of a nonzero integer; independent of the library."""
    if n == 0:
        raise ValueError("vp_int(0) is infinite")
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def vp_frac(q: Fraction, p: int) -> int:
    q = Fraction(q)
    return vp_int(q.numerator, p) - vp_int(q.denominator, p)


def pytest_terminal_summary(terminalreporter):
    mod = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
