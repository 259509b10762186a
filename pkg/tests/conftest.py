import random

import pytest

from oscm.core import BipartiteInstance
from oscm.generators import random_bipartite, unsuited_extremal


def random_instances(count, seed=0, max_a=6, max_b=7):
    """Seeded small instances; same stream the acceptance suite uses."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n_a, n_b = rng.randint(1, max_a), rng.randint(1, max_b)
        m = rng.randint(0, n_a * n_b)
        out.append(random_bipartite(n_a, n_b, m, rng.randrange(2**32)))
    return out


def inst(n_a, *rows):
    """Instance from 0-based adjacency rows."""
    return BipartiteInstance(n_a, len(rows), tuple(tuple(r) for r in rows))


@pytest.fixture(scope="session")
def ext12():
    return unsuited_extremal(12, 6)


# filled by test_acceptance, printed once at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
