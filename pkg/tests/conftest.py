import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from veronese_sdepth import (
    build_partition,
    build_partition_k3,
    threshold,
    verify_partition,
)


def criterion1_instances():
    out = []
    for d in range(1, 5):
        for n in range(d, min(threshold(d), 18) + 1):
            out.append((n, d))
    for n in range(5, 24):
        out.append((n, 5))
    return out


@pytest.fixture(scope="session")
def c1_results():
    """(n, d, verdict, min_upper) for every instance of acceptance criterion 1.

    Partitions are discarded immediately; only the verdict summary is kept
    so the largest instances do not pin hundreds of MB for the session.
    """
    rows = []
    for n, d in criterion1_instances():
        part, _ = build_partition(n, d)
        verdict = verify_partition(part)
        rows.append((n, d, verdict.ok, verdict.min_upper_size))
        del part
    return rows


@pytest.fixture(scope="session")
def c2_results():
    rows = []
    for d in (1, 2, 3):
        part, _ = build_partition_k3(d)
        verdict = verify_partition(part)
        rows.append((part.n, d, verdict.ok, verdict.min_upper_size))
    return rows


@pytest.fixture(scope="session")
def c4_results():
    instances = [(n, 1) for n in range(7, 13)] + [(n, 2) for n in range(11, 15)]
    rows = []
    for n, d in instances:
        part, _ = build_partition(n, d)
        verdict = verify_partition(part)
        rows.append((n, d, verdict.ok, verdict.min_upper_size))
    return rows
