import math

import numpy as np
import pytest

from kdist import DiscreteMeasure, KernelSpec

# Box-kernel counterexample: three points at 0 against {-1.1, 1.1, 0}.
BOX_A = [0.0, 0.0, 0.0]
BOX_B = [-1.1, 1.1, 0.0]


def brute_kappa(k, P, Q):
    """Pure-Python double sum, independent of the numpy path."""
    total = 0.0
    for p, wp in zip(P.points.tolist(), P.weights.tolist()):
        for q, wq in zip(Q.points.tolist(), Q.weights.tolist()):
            sq = sum((a - b) ** 2 for a, b in zip(p, q))
            if k.kind == "gaussian":
                kv = math.exp(-sq / k.sigma**2)
            else:
                kv = 1.0 if math.sqrt(sq) <= k.width else 0.0
            total += wp * kv * wq
    return total


def brute_dsq(k, P, Q):
    return brute_kappa(k, P, P) + brute_kappa(k, Q, Q) - 2 * brute_kappa(k, P, Q)


@pytest.fixture
def box_pair():
    return KernelSpec.box(2.0), DiscreteMeasure(BOX_A), DiscreteMeasure(BOX_B)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


_acceptance_lines = []


def record_acceptance(line):
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
