from __future__ import annotations

import pytest


def pytest_addoption(parser):
    parser.addoption("--deep", action="store_true", default=False, help="run the large-group checks")


def pytest_configure(config):
    config.addinivalue_line("markers", "deep: needs --deep (large groups, minutes)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--deep"):
        return
    skip = pytest.mark.skip(reason="needs --deep")
    for item in items:
        if "deep" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def deep(request) -> bool:
    return request.config.getoption("--deep")
