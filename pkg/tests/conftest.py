from __future__ import annotations

import pytest

from phitilde_suite.analysis import PreimageCatalog, build_catalog
from phitilde_suite.sieve import SieveTables, build_sieve


@pytest.fixture(scope="session")
def tables() -> SieveTables:
    return build_sieve(10**6)


@pytest.fixture(scope="session")
def catalog_100(tables: SieveTables) -> PreimageCatalog:
    return build_catalog(100, tables)
