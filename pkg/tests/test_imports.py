"""Every module imports against the pinned dependency stack"""

import importlib

import pytest

MODULES = [
    "core", "core.errors", "core.settings", "core.words", "core.specs", "core.hall_group",
    "core.ball", "core.d_functions",
    "arithmetic", "arithmetic.primes", "arithmetic.quadratic", "arithmetic.laurent",
    "arithmetic.logscale", "arithmetic.growth",
    "separation", "separation.finite_quotients", "separation.witnesses",
    "separation.centralizers", "separation.conjugacy",
    "validation", "validation.oracles", "validation.rf_harness", "validation.results_store",
    "validation.cli",
]


@pytest.mark.parametrize("name", MODULES)
def test_module_imports(name):
    assert importlib.import_module(name) is not None


def test_cli_entry_point_resolves():
    from validation.cli import build_parser, main
    assert callable(main)
    assert build_parser().prog == "hallgroups"
