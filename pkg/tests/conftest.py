"""Shared fixtures: corpus algebras are built once per session so their caches are reused."""
import os
import sys
from datetime import timedelta
from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from dgfrob.io import load_corpus  # noqa: E402
from dgfrob.semifree import resolve_trivial  # noqa: E402

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], print_blob=True
)
settings.register_profile("ci", deadline=timedelta(seconds=30), derandomize=True)
settings.register_profile("dev", max_examples=10, deadline=None)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))

DG_ENTRIES = ["example1", "ex3", "ex2", "ex5", "prop71", "prop72"]
SC_ENTRIES = ["prop71_ext", "prop72_ext", "ex3_ext", "example1_ext", "ex2_ext"]


@lru_cache(maxsize=None)
def corpus_doc(name):
    return load_corpus(name)


@lru_cache(maxsize=None)
def corpus_dg(name):
    return corpus_doc(name).dg_algebra()


@lru_cache(maxsize=None)
def corpus_resolution(name, cutoff=8):
    return resolve_trivial(corpus_dg(name), cutoff)


@pytest.fixture(params=DG_ENTRIES)
def dg_entry(request):
    return request.param, corpus_dg(request.param)


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    lines = test_acceptance.summary_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
