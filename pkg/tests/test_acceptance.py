"""Acceptance gate: every exit criterion at its stated tolerance.

The whole ladder runs once per session; each test reports one criterion
with a visible pass/fail line.
"""

import filecmp
import os

import pytest

from horizonkit import acceptance


@pytest.fixture(scope="module")
def results(tmp_path_factory):
    outdir = tmp_path_factory.mktemp("acceptance")
    res = acceptance.run_all(outdir=str(outdir), seed=0)
    return {r.key: r for r in res}, str(outdir)


def _report(r):
    print(f"\n{r.key} {'PASS' if r.passed else 'FAIL'}: {r.title} "
          f"({r.detail})")
    assert r.passed, f"{r.key}: {r.detail}"


def test_criterion_1_eikonal_achronality(results):
    _report(results[0]["C1"])


def test_criterion_2_development_equivalence(results):
    _report(results[0]["C2"])


def test_criterion_3_generator_structure(results):
    _report(results[0]["C3"])


def test_criterion_4_main_theorem_pattern(results):
    _report(results[0]["C4"])


def test_criterion_5_appendix_lemmas(results):
    _report(results[0]["C5"])


def test_criterion_6_harness_inequality(results):
    _report(results[0]["C6"])


def test_criterion_7_reconstruction(results):
    _report(results[0]["C7"])


def test_criterion_8_determinism(results):
    _report(results[0]["C8"])


def test_artifacts_written(results):
    _, outdir = results
    names = os.listdir(outdir)
    assert "acceptance_summary.csv" in names
    assert "criterion4_scene.scene" in names
    assert any(n.startswith("criterion3_profile") for n in names)
