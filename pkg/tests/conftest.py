import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qre import Mat, REMatrix, gl_family, q_solution  # noqa: E402


@pytest.fixture(scope="session")
def fam2():
    return gl_family(2)


@pytest.fixture(scope="session")
def R2(fam2):
    return fam2.R("f", "f")


@pytest.fixture(scope="session")
def K_identity():
    return REMatrix.scalar("f", Mat.identity([2]))


@pytest.fixture(scope="session")
def K_diag():
    return REMatrix.scalar("f", Mat.diag([0, 1]))


@pytest.fixture(scope="session")
def K_bad():
    return REMatrix.scalar("f", Mat([[1, 1], [0, 1]]))


@pytest.fixture(scope="session")
def K_q(fam2):
    return q_solution(fam2, "f")


@pytest.fixture(scope="session")
def corpus(K_identity, K_diag, K_q):
    return {"I": K_identity, "diag01": K_diag, "Q": K_q}
