import random

import pytest

from pfva.fock_states import State, enumerate_monomials


def basis_monomials(max_weight, charges=None):
    out = []
    for n in range(max_weight + 1):
        cs = range(-2 * n, 2 * n + 1, 2) if charges is None else charges
        for c in cs:
            out.extend(enumerate_monomials(n, c))
    return out


def random_states(rng, max_weight, count, homogeneous=True):
    """Random integer combinations of basis monomials of one (weight, charge) each."""
    out = []
    for _ in range(count):
        n = rng.randint(0, max_weight)
        c = rng.choice(range(-2 * n, 2 * n + 1, 2)) if n else 0
        monos = enumerate_monomials(n, c)
        picks = rng.sample(monos, min(len(monos), rng.randint(1, 3)))
        out.append(State({m: rng.randint(-3, 3) or 1 for m in picks}))
    return out


@pytest.fixture
def rng():
    return random.Random(20240611)


# lines recorded by the acceptance suite, echoed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(" ")[0])):
            terminalreporter.write_line(line)
