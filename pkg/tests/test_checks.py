import pytest

from src.harness.checks import TheoremVerifier, certificate_audit, verify_example_2_5
from src.harness.generators import a2_algebra, example_2_5, nakayama_algebra
from src.harness.report import Verdict, VerificationReport
from src.representation.hom import IsoSearchSettings
from src.utils.exceptions import NotNakayama, PreconditionError


@pytest.fixture(scope="module")
def lambda4_verifier():
    return TheoremVerifier(example_2_5(4))


@pytest.fixture(scope="module")
def a2_verifier():
    return TheoremVerifier(a2_algebra())


def witnesses(report, name):
    return report.theorems[name]["witnesses"]


def test_gpc_on_lambda(lambda4_verifier):
    report = lambda4_verifier.gpc_check()
    assert report.verdict == Verdict.PASS
    found = witnesses(report, "gpc_check")
    assert found["indecomposables"] == 8
    assert found["gorenstein_projective"] == 8
    assert found["gp_self_orthogonal"] == ["P(1)", "P(2)", "P(3)", "P(4)"]
    assert found["global_dimension"] is None
    assert found["violations"] == []


def test_gpc_on_a2(a2_verifier):
    report = a2_verifier.gpc_check()
    assert report.exit_code == 0
    found = witnesses(report, "gpc_check")
    assert found["indecomposables"] == 3
    assert found["gorenstein_projective"] == 2
    assert found["gp_self_orthogonal"] == ["P(1)", "P(2)"]
    assert found["global_dimension"] == 1


def test_gpc_on_small_algebras(semisimple3, loop):
    report = TheoremVerifier(semisimple3).gpc_check()
    assert report.verdict == Verdict.PASS
    assert witnesses(report, "gpc_check")["global_dimension"] == 0

    report = TheoremVerifier(loop).gpc_check()
    assert report.verdict == Verdict.PASS
    assert witnesses(report, "gpc_check")["gorenstein_projective"] == 2
    assert witnesses(report, "gpc_check")["gp_self_orthogonal"] == ["P(1)"]


def test_gpc_on_linear_nakayama():
    # 有限大域次元なので Gorenstein 射影的なのは射影加群のみ
    algebra = nakayama_algebra(False, 3, [(1, 2)])
    found = witnesses(TheoremVerifier(algebra).gpc_check(), "gpc_check")
    assert found["indecomposables"] == 5
    assert found["gorenstein_projective"] == 3
    assert found["global_dimension"] == 2


def test_non_nakayama_is_rejected(kronecker):
    with pytest.raises(NotNakayama):
        TheoremVerifier(kronecker)


def test_symmetry(lambda4_verifier, a2_verifier):
    report = lambda4_verifier.symmetry_check()
    assert report.verdict == Verdict.PASS
    found = witnesses(report, "symmetry_check")
    assert found["ext_tables"]["S(1)"] == [0, 0, 0, 1, 0, 0]
    assert (found["gpc"], found["gpc_opposite"]) == ("pass", "pass")
    assert a2_verifier.symmetry_check().verdict == Verdict.PASS


def test_opposite_verifier_is_linked(lambda4_verifier):
    opposite = lambda4_verifier.opposite()
    assert opposite.algebra is lambda4_verifier.algebra.opposite()
    assert opposite.opposite() is lambda4_verifier


def test_syzygies_and_transpose(lambda4_verifier, a2_verifier):
    report = lambda4_verifier.prop_3_4_check()
    assert report.verdict == Verdict.PASS
    found = witnesses(report, "prop_3_4_check")
    assert found["checked"] == 4
    assert found["transpose_mismatches"] == []
    assert a2_verifier.prop_3_4_check().verdict == Verdict.PASS


def test_vanishing_against_algebra(lambda4_verifier, a2_verifier):
    report = lambda4_verifier.prop_3_5_check()
    assert report.verdict == Verdict.PASS
    assert witnesses(report, "prop_3_5_check")["qualifying"] == ["P(1)", "P(2)", "P(3)", "P(4)"]
    report = a2_verifier.prop_3_5_check()
    assert witnesses(report, "prop_3_5_check")["qualifying"] == ["P(1)", "P(2)"]


def test_projective_iff_gp(lambda4_verifier, a2_verifier):
    report = lambda4_verifier.prop_3_7_check()
    assert report.verdict == Verdict.PASS
    assert witnesses(report, "prop_3_7_check")["qualifying"] == ["P(1)", "P(2)", "P(3)", "P(4)"]
    assert a2_verifier.prop_3_7_check().verdict == Verdict.PASS


def test_stable_equivalence(lambda4_verifier, a2_verifier):
    report = lambda4_verifier.prop_2_2_check()
    assert report.verdict == Verdict.PASS
    assert witnesses(report, "prop_2_2_check")["gorenstein_projective"] == 8
    assert a2_verifier.prop_2_2_check().verdict == Verdict.PASS


def test_ext_as_stable_hom(lambda4_verifier, a2_verifier):
    report = lambda4_verifier.lemma_3_3_check()
    assert report.verdict == Verdict.PASS
    assert witnesses(report, "lemma_3_3_check")["compared"] == 8 * 8 * 6
    report = a2_verifier.lemma_3_3_check()
    assert report.verdict == Verdict.PASS
    assert witnesses(report, "lemma_3_3_check")["compared"] == 2 * 3 * 6


@pytest.fixture(scope="module")
def lambda5_verifier():
    return TheoremVerifier(example_2_5(5))


def test_symmetry_on_lambda5(lambda5_verifier):
    report = lambda5_verifier.symmetry_check()
    assert report.verdict == Verdict.PASS
    found = witnesses(report, "symmetry_check")
    assert found["ext_table_mismatches"] == []
    assert found["self_orthogonality_mismatches"] == []
    assert len(found["ext_tables"]) == 10
    assert found["ext_tables"]["S(3)"] == [0, 0, 0, 0, 1, 0]


@pytest.mark.parametrize("fixture, indecomposables, projectives", [
    ("lambda5", 10, 5),
    ("semisimple3", 3, 3),
])
def test_sweeps_on_more_algebras(request, fixture, indecomposables, projectives):
    verifier = TheoremVerifier(request.getfixturevalue(fixture))
    report = VerificationReport(verifier.algebra)
    for check in (verifier.prop_3_4_check, verifier.prop_3_7_check, verifier.prop_2_2_check, verifier.lemma_3_3_check):
        check(report)
    assert report.verdict == Verdict.PASS
    assert all(not body["witnesses"].get("unknown") for body in report.theorems.values())
    assert witnesses(report, "prop_3_4_check")["checked"] == projectives
    assert witnesses(report, "prop_3_4_check")["transpose_mismatches"] == []
    assert len(witnesses(report, "prop_3_7_check")["qualifying"]) == projectives
    assert witnesses(report, "prop_2_2_check")["gorenstein_projective"] == indecomposables
    assert witnesses(report, "prop_2_2_check")["double_dual_failures"] == []
    assert witnesses(report, "lemma_3_3_check")["compared"] == indecomposables * indecomposables * 6
    assert witnesses(report, "lemma_3_3_check")["mismatches"] == []


def test_checks_share_one_report(a2_verifier):
    report = VerificationReport(a2_verifier.algebra)
    a2_verifier.gpc_check(report)
    a2_verifier.prop_3_5_check(report)
    assert set(report.theorems) == {"gpc_check", "prop_3_5_check"}
    assert set(report.timing) == {"gpc_check", "prop_3_5_check"}


def test_undetermined_isomorphism_is_inconclusive():
    capped = IsoSearchSettings(exhaustive_limit=1, random_trials=0)
    report = TheoremVerifier(example_2_5(4), settings=capped).gpc_check()
    assert report.verdict == Verdict.INCONCLUSIVE
    assert report.exit_code == 2
    assert "undetermined" in witnesses(report, "gpc_check")


def test_module_records(a2_verifier):
    report = VerificationReport(a2_verifier.algebra)
    a2_verifier.add_module_records(report)
    by_name = {record["name"]: record for record in report.modules}
    assert by_name["S(1)"]["gp"] == "not_gp"
    assert by_name["S(1)"]["syzygy_orbit"] == [[1, 0], [0, 1], [0, 0], [0, 0]]
    assert by_name["P(2)"]["projective"] is True
    table = report.module_table().set_index("module")
    assert table.loc["S(1)", "self_orthogonal"] == "消滅(周期 2->3)"
    assert table.loc["P(1)", "self_orthogonal"] == "消滅(周期 1->2)"


@pytest.mark.parametrize("n, t", [(4, 2), (5, 3), (3, 1), (6, None)])
def test_example_2_5(n, t):
    report = verify_example_2_5(n, t)
    assert report.exit_code == 0
    found = witnesses(report, "example_2_5")
    assert found["t"] == (n - 2 if t is None else t)
    assert found["structure"] == {
        "dim": 2 * n, "nakayama": True, "self_injective": True, "opposite_relabeling": True,
    }
    assert len(found["simples"]) == n
    for simple in found["simples"]:
        assert simple["gp"] == "gp"
        assert simple["projective"] is False
        assert simple["ext_upto_t"] == [0] * found["t"]
        assert (simple["first_nonzero_degree"], simple["first_nonzero_dim"]) == (n, 1)
        assert simple["first_nonzero_dim_by_shift"] == 1


def test_example_2_5_raises_small_bound():
    report = verify_example_2_5(5, 3, bound=2)
    assert report.verdict == Verdict.PASS
    assert witnesses(report, "example_2_5")["bound"] == 6
    assert witnesses(verify_example_2_5(4, 2, bound=10), "example_2_5")["bound"] == 10


def test_example_2_5_other_characteristic():
    assert verify_example_2_5(5, 3, p=3).verdict == Verdict.PASS


@pytest.mark.parametrize("n, t", [(4, 3), (3, 2), (5, 0)])
def test_example_2_5_preconditions(n, t):
    with pytest.raises(PreconditionError):
        verify_example_2_5(n, t)


@pytest.mark.slow
def test_example_2_5_eight_vertices():
    report = verify_example_2_5(8, 6)
    assert report.verdict == Verdict.PASS


@pytest.mark.slow
@pytest.mark.parametrize("n", range(3, 9))
def test_gpc_on_lambda_family(n):
    verifier = TheoremVerifier(example_2_5(n))
    report = verifier.gpc_check()
    assert report.verdict == Verdict.PASS
    assert witnesses(report, "gpc_check")["gorenstein_projective"] == 2 * n


@pytest.mark.slow
def test_symmetry_on_lambda8():
    assert TheoremVerifier(example_2_5(8)).symmetry_check().verdict == Verdict.PASS


def test_certificate_audit(lambda4_verifier, a2_verifier):
    report = certificate_audit([lambda4_verifier, a2_verifier], samples=20, seed=0)
    assert report.verdict == Verdict.PASS
    found = witnesses(report, "certificate_audit")
    assert found["pool"] >= 20
    assert found["sampled"] == 20
    assert found["failures"] == []


def test_certificate_audit_is_reproducible(a2_verifier):
    first = certificate_audit([a2_verifier], samples=3, seed=7).to_json()
    second = certificate_audit([a2_verifier], samples=3, seed=7).to_json()
    assert first == second
