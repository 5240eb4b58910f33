"""Shared fixtures: synthesized corpora and cached corpus analyzers.

The session-scoped analyzers share their spectrum/lag caches across tests,
which keeps the suite fast; tests that assert runtime budgets build their own
fresh analyzers instead.
"""
import pytest

import vtlest as v

_ACCEPTANCE_RESULTS: dict[str, tuple[int, str]] = {}


def pytest_runtest_makereport(item, call):
    if call.when != "call":
        return
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    label = marker.args[0]
    order = marker.kwargs.get("order", 99)
    _ACCEPTANCE_RESULTS[label] = (order, "FAIL" if call.excinfo else "PASS")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, (_, outcome) in sorted(_ACCEPTANCE_RESULTS.items(), key=lambda kv: kv[1][0]):
        terminalreporter.write_line(f"[{outcome}] {label}")


@pytest.fixture(scope="session")
def erb_axis():
    return v.make_axis("erb", 100, 100.0, 8000.0)


@pytest.fixture(scope="session")
def default_corpus_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("corpus")
    v.make_corpus(v.default_speakers(), list("aiueo"), out)
    return out


@pytest.fixture(scope="session")
def default_corpus(default_corpus_dir):
    return v.load_corpus(default_corpus_dir / "manifest.csv")


@pytest.fixture(scope="session")
def pair_corpus_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("pair")
    v.make_corpus(v.pair_demo_speakers(), ["a"], out)
    return out


@pytest.fixture(scope="session")
def pair_corpus(pair_corpus_dir):
    return v.load_corpus(pair_corpus_dir / "manifest.csv")


@pytest.fixture(scope="session")
def female_vowel():
    """Synthetic 182 Hz /a/ from a 15 cm tract, with its linear EP spectrum."""
    spec = v.vowel_spec("a", 182.0, v.BASELINE_VTL_CM / 15.0)
    samples = v.synth_vowel(spec)
    axis = v.make_axis("erb", 100, 100.0, 8000.0)
    ep = v.gammatone_ep(samples, spec.fs, axis)
    spectrum = v.center_average(ep, spec.duration / 2)
    return spec, samples, spectrum
