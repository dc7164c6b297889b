import sys
from pathlib import Path

import pytest

from qcong import _kernels

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # jit compilation must not land inside a timed check
    _kernels.warmup()
