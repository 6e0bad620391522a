import math
import random
import sys

import pytest
from hypothesis import strategies as st

from caspas import difv as dv
from caspas.difv import DIFV, SQRT2
from caspas.pipeline import CaspasConfig, run_caspas
from caspas.problem_io import solar_problem


@pytest.fixture(scope="session")
def solar():
    return solar_problem()


@pytest.fixture(scope="session")
def solar_q(solar):
    return run_caspas(solar, CaspasConfig())


@pytest.fixture(scope="session")
def solar_p(solar):
    return run_caspas(solar, CaspasConfig(family="p"))


# ---------------------------------------------------------------------------
# strategies and random generators


@st.composite
def difvs(draw):
    mu = draw(st.floats(0.0, 1.0))
    nu = draw(st.floats(0.0, 1.0 - mu))
    r = draw(st.floats(0.0, SQRT2))
    return DIFV(mu, nu, r)


def weight_vectors(k: int):
    return st.lists(st.floats(0.01, 1.0), min_size=k, max_size=k).map(lambda w: [x / math.fsum(w) for x in w])


def random_difv(rng: random.Random) -> DIFV:
    mu = rng.random()
    nu = rng.uniform(0.0, 1.0 - mu)
    return DIFV(mu, nu, rng.uniform(0.0, SQRT2))


def random_weights(rng: random.Random, k: int) -> list[float]:
    raw = [rng.uniform(0.01, 1.0) for _ in range(k)]
    total = math.fsum(raw)
    return [x / total for x in raw]


def close(a: DIFV, b, tol: float) -> bool:
    return all(abs(x - y) <= tol for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# step-by-step Choquet oracle


def _ascending(values, xi):
    # plain score-then-accuracy sort, written out independently of the library
    def key(i):
        v = values[i]
        s = xi * (v.mu - v.nu + 1) / 2 + (1 - xi) * v.r / SQRT2
        h = xi * (v.mu + v.nu) + (1 - xi) * v.r / SQRT2
        return (s, h, i)

    return sorted(range(len(values)), key=key)


def choquet_chain(values, tau, xi, family, geometric=False):
    """Choquet aggregate as an explicit chain of scalar/power and oplus/otimes.

    ``tau`` maps a frozenset of input indices to its measure.
    """
    order = _ascending(values, xi)
    acc = None
    for pos, idx in enumerate(order):
        upper = frozenset(order[pos:])
        weight = tau(upper) - tau(upper - {idx})
        if weight <= 0.0:
            continue
        if geometric:
            term = dv.power(values[idx], weight, family)
            acc = term if acc is None else dv.otimes(acc, term, family)
        else:
            term = dv.scalar(weight, values[idx], family)
            acc = term if acc is None else dv.oplus(acc, term, family)
    return acc


def lambda_tau(lam: float, weights):
    """Lambda-measure as a function on index sets, from scratch."""
    if lam == 0.0:
        return lambda s: math.fsum(weights[i] for i in s)
    g = [((1 + lam) ** w - 1) / lam for w in weights]
    return lambda s: (math.prod(1 + lam * g[i] for i in s) - 1) / lam


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    results = getattr(acceptance, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
