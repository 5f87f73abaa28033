import json

import pytest

homalg = pytest.importorskip("homalg")

from conftest import read


def test_module_metadata():
    assert homalg.schema_version == "homalg-document/1"
    assert "rb-absolute" in homalg.bundle_kinds()
    assert homalg.battery_of_kind("ainf") == "stasheff"
    assert "cyclic-completion" in homalg.constructions()
    assert set(homalg.pipelines()) == {"rb-aybe-double-lie", "psi-precy"}


def test_signs():
    # swapping two odd elements costs a sign, swapping an odd past an even does not
    assert homalg.koszul_sign([1, 0], [1, 1]) == -1
    assert homalg.koszul_sign([1, 0], [1, 0]) == 1
    assert homalg.sgn([1, 2, 0]) == 1
    assert len(homalg.shuffles(2, 2)) == 6


def test_check_statuses():
    assert homalg.check(read("dual_numbers_rb.json"))["status"] == 0
    bad = homalg.check(read("dual_numbers_rb_perturbed.json"))
    assert bad["status"] == 1
    assert bad["report"]["verdict"] == "fail"
    assert bad["report"]["entries"]
    err = homalg.check(read("bad_rational.json"))
    assert err["status"] == 2
    assert "/operations/0/entries/0/coeff" in err["report"]["message"]


def test_input_error_carries_locator():
    with pytest.raises(homalg.InputError) as info:
        homalg.canonicalize(read("bad_rational.json"))
    assert info.value.locator == "/operations/0/entries/0/coeff"
    with pytest.raises(ValueError):
        homalg.canonicalize("{")


def test_canonical_form_is_stable():
    text = read("graded_toy_rb.json")
    once = homalg.canonicalize(text)
    assert homalg.canonicalize(once) == once
    assert json.loads(once) == json.loads(text)


def test_construct_output_rechecks():
    res = homalg.construct(read("dual_numbers_rb.json"), "cyclic-completion")
    assert res["status"] == 0
    assert res["report"]["certificate"]["verdict"] == "pass"
    assert homalg.check(res["document"])["status"] == 0


def test_refused_construction():
    res = homalg.construct(read("aguiar_not_skew.json"), "schedler")
    assert res["status"] == 1
    assert res["document"] is None


def test_roundtrip_pipelines():
    assert homalg.roundtrip(read("aguiar.json"), "rb-aybe-double-lie")["status"] == 0
    assert homalg.roundtrip(read("end_dual_numbers.json"), "psi-precy")["status"] == 0


def test_jobs_do_not_change_reports():
    text = read("dual_numbers_assoc_perturbed.json")
    one = homalg.check(text, jobs=1)
    four = homalg.check(text, jobs=4)
    assert one["status"] == 1
    assert one["report"] == four["report"]
