import pytest

from qkincidence.combinatorics import Degree
from qkincidence.suites import REPORT_ONLY, SUITES, run_suite


@pytest.mark.parametrize("name", list(SUITES))
def test_every_suite_passes_at_n3(name):
    r = run_suite(name, 3)
    assert r.passed, r.render()
    assert r.cases_run > 0


def test_render_is_reproducible():
    a = run_suite("q-interval", 4).render()
    b = run_suite("q-interval", 4).render()
    assert a == b
    assert "elapsed" not in a


def test_case_counts():
    assert run_suite("iset-oracle", 3).cases_run == 6
    assert run_suite("genus-zero", 4, Degree(2, 2)).cases_run == 12 ** 3 * 9


def test_cutoff_defaults_and_ignored():
    assert run_suite("psi-roundtrip", 3).cutoff == Degree(3, 3)
    assert run_suite("quantum-classical", 3).cutoff == Degree(2, 2)
    assert run_suite("lemma-chi", 3, Degree(1, 1)).cutoff is None


def test_modes():
    assert run_suite("associativity", 3).mode == "equivariant"
    assert run_suite("associativity", 3, equivariant=False).mode == "non-equivariant"
    assert run_suite("lr-vs-algorithm", 3).mode == "equivariant"


def test_q_interval_logs_shapes():
    r = run_suite("q-interval", 6)
    shapes = [o for o in r.observations if o.startswith("shape")]
    assert len(shapes) == 3
    assert sum(int(o.split(": ")[1].split()[0]) for o in shapes) == 30 ** 2


def test_report_only():
    assert REPORT_ONLY == {"equivariant-positivity-conjecture"}
    r = run_suite("equivariant-positivity-conjecture", 3)
    assert r.report_only and "report only" in r.render()
    assert r.observations[0].startswith("violations:")


def test_bad_arguments():
    with pytest.raises(ValueError):
        run_suite("nope", 3)
    with pytest.raises(ValueError):
        run_suite("lemma-chi", 2)
    with pytest.raises(ValueError):
        run_suite("genus-zero", 3, Degree(-1, 0))
