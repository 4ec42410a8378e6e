import json
import random

import pytest

from lyubeznik.errors import UserInputError
from lyubeznik.field_linalg import QQ, FieldSpec
from lyubeznik.monomial import parse_ideal
from lyubeznik.simplicial import SimplicialComplex
from lyubeznik.verify import (
    CheckReport,
    CorpusConfig,
    all_passed,
    check_char_dependence,
    check_cone_trick,
    check_golden_bad_b,
    check_golden_nonstandard,
    check_gral_inequalities,
    check_polarization_hh_graph,
    check_polarization_theorem,
    check_structural,
    generate_corpus,
    random_complex,
    random_ideal,
    run_suite,
)


def test_random_complex_is_deterministic():
    a = random_complex(5, 0.4, random.Random(11))
    b = random_complex(5, 0.4, random.Random(11))
    assert a == b and not a.is_void


def test_random_complex_dense_limit_is_the_simplex():
    assert random_complex(4, 0.999999, random.Random(0)) == SimplicialComplex.simplex(4)


def test_random_complex_on_one_vertex():
    seen = {random_complex(1, 0.5, random.Random(s)).facets for s in range(40)}
    assert seen == {(0,), (1,)}


@pytest.mark.parametrize("args", [(0, 0.5), (9, 0.5), (3, 0.0), (3, 1.0)])
def test_random_complex_rejects_bad_parameters(args):
    with pytest.raises(UserInputError):
        random_complex(*args, random.Random(0))


def test_random_ideals_respect_limits():
    rng = random.Random(5)
    for _ in range(50):
        I = random_ideal(4, 3, rng)
        assert 1 <= len(I.generators) <= 6
        assert all(0 <= e <= 3 for g in I.generators for e in g)
        assert all(any(g) for g in I.generators)


@pytest.mark.parametrize(
    "kwargs",
    [dict(max_vertices=9), dict(max_vars=5), dict(max_exponent=4), dict(complex_count=-1)],
)
def test_corpus_config_limits(kwargs):
    with pytest.raises(UserInputError):
        CorpusConfig(**kwargs)


def test_seed_determines_the_corpus():
    cfg = CorpusConfig(seed=99, complex_count=5, ideal_count=5)
    assert generate_corpus(cfg) == generate_corpus(cfg)
    other = generate_corpus(CorpusConfig(seed=100, complex_count=5, ideal_count=5))
    assert other != generate_corpus(cfg)


def test_empty_config_gives_no_reports():
    assert run_suite(CorpusConfig()) == []
    assert all_passed([])


def test_suite_is_deterministic_and_serializable():
    cfg = CorpusConfig(seed=4, complex_count=4, ideal_count=3, fields=(QQ, FieldSpec(2)))
    a = [r.to_dict() for r in run_suite(cfg)]
    b = [r.to_dict() for r in run_suite(cfg)]
    assert a == b
    json.dumps(a)
    names = {r["check"] for r in a}
    assert "polarization_theorem[GF(2)]" in names and "cone_trick[QQ]" in names


def test_report_records_failures():
    rep = CheckReport("demo")
    rep.record("ok", True)
    rep.record("bad", False, 1, 2)
    assert not rep.passed
    assert rep.to_dict()["failures"] == [{"instance": "bad", "expected": 1, "actual": 2}]
    assert rep.summary() == "demo: FAIL (1) on 0 instances"


@pytest.mark.parametrize("field", [QQ, FieldSpec(2)], ids=str)
def test_golden_checks_pass(field):
    assert check_golden_bad_b(field).passed
    assert check_golden_nonstandard(field).passed


def test_char_dependence_check():
    assert check_char_dependence().passed


def test_ideal_checks_on_small_examples():
    for text in ["x^2*y, y^3", "x*y, y^2*z", "x^3"]:
        I = parse_ideal(text)
        assert check_polarization_theorem(I).passed
        assert check_polarization_hh_graph(I).passed
        assert check_gral_inequalities(I).passed


def test_complex_checks_on_the_projective_plane():
    rp2 = SimplicialComplex.from_facets(6, [(0, 1, 2), (0, 1, 3), (0, 2, 4), (0, 3, 5), (0, 4, 5),
                                            (1, 2, 5), (1, 3, 4), (1, 4, 5), (2, 3, 4), (2, 3, 5)])
    for field in (QQ, FieldSpec(2)):
        assert check_cone_trick(rp2, field).passed
        assert check_structural(rp2, field).passed


def test_gral_check_detects_the_dimension_shift_counterexample():
    delta = SimplicialComplex.from_facets(4, [(0, 1, 2), (1, 3), (2, 3)])
    assert not check_gral_inequalities(delta, shift="dimension").passed
    assert check_gral_inequalities(delta, shift="height").passed
    with pytest.raises(UserInputError):
        check_gral_inequalities(delta, shift="other")
