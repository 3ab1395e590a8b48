import pytest

from src.harness.generators import example_2_5
from src.homology.certificate import (
    CertificateKind,
    ext_vanishing_certificate,
    is_gorenstein_projective,
    is_self_orthogonal,
)
from src.homology.resolution import syzygy
from src.representation.hom import IsoSearchSettings
from src.representation.module import (
    direct_sum,
    projective_module,
    regular_module,
    simple_module,
    zero_module,
)
from src.utils.exceptions import AlgebraMismatch, PreconditionError, UndeterminedIsomorphism


def test_simple_against_regular_is_certified_by_period(lambda5):
    certificate = ext_vanishing_certificate(simple_module(lambda5, 1), regular_module(lambda5))
    assert certificate.kind == CertificateKind.CERTIFIED_VANISHING
    assert certificate.period == (0, 5)
    assert certificate.ext_dims == [0] * 5
    assert certificate.checked_range == (1, 5)
    assert certificate.witness is not None
    assert certificate.witness.commutes()


def test_simple_self_extension_is_nonzero_at_n(lambda5):
    certificate = is_self_orthogonal(simple_module(lambda5, 1))
    assert certificate.kind == CertificateKind.NONZERO_AT
    assert (certificate.degree, certificate.dimension) == (5, 1)
    assert certificate.ext_dims == [0, 0, 0, 0, 1]


def test_projective_is_certified(lambda4, a2):
    certificate = is_self_orthogonal(projective_module(lambda4, 2))
    assert certificate.is_certified
    assert certificate.period == (1, 2)
    assert certificate.ext_dims == [0, 0]

    certificate = is_self_orthogonal(projective_module(a2, 1))
    assert certificate.is_certified


def test_zero_module_is_certified(lambda4):
    certificate = ext_vanishing_certificate(zero_module(lambda4), simple_module(lambda4, 1))
    assert certificate.is_certified
    assert certificate.period == (0, 1)


def test_finite_projective_dimension_period(a2):
    # Ω S(1) = P(2) は射影的なので Ω^2 S(1) = 0
    certificate = ext_vanishing_certificate(simple_module(a2, 1), simple_module(a2, 1))
    assert certificate.is_certified
    assert certificate.period == (2, 3)
    assert certificate.ext_dims == [0, 0, 0]


def test_bound_exhausted_is_unknown(lambda5):
    certificate = ext_vanishing_certificate(simple_module(lambda5, 1), regular_module(lambda5), bound=4)
    assert certificate.kind == CertificateKind.UNKNOWN_BEYOND
    assert certificate.ext_dims == [0, 0, 0, 0]
    assert certificate.summary() == "不明(B=4)"


def test_certificate_dict_hides_witness_unless_verbose(lambda4):
    certificate = ext_vanishing_certificate(simple_module(lambda4, 1), regular_module(lambda4))
    plain = certificate.to_dict()
    assert plain == {
        "kind": "certified_vanishing",
        "context": certificate.context,
        "bound": 64,
        "ext_dims": [0, 0, 0, 0],
        "summary": "消滅(周期 0->4)",
        "period": [0, 4],
    }
    assert "witness" in certificate.to_dict(verbose=True)


def test_undetermined_isomorphism_aborts(loop):
    # k[x]/(x^2) 上で Ω(S ⊕ S) ≅ S ⊕ S。探索を絞ると同型が決着しない
    double = direct_sum(simple_module(loop, 1), simple_module(loop, 1))
    capped = IsoSearchSettings(exhaustive_limit=1, random_trials=0)
    with pytest.raises(UndeterminedIsomorphism):
        ext_vanishing_certificate(double, regular_module(loop), settings=capped)
    assert ext_vanishing_certificate(double, regular_module(loop)).period == (0, 1)


def test_validation(lambda4, lambda5):
    with pytest.raises(PreconditionError):
        ext_vanishing_certificate(simple_module(lambda4, 1), simple_module(lambda4, 1), bound=0)
    with pytest.raises(AlgebraMismatch):
        ext_vanishing_certificate(simple_module(lambda4, 1), simple_module(lambda5, 1))


@pytest.mark.parametrize("n", [3, 4, 6])
def test_lambda_simples_are_gorenstein_projective(n):
    algebra = example_2_5(n)
    for j in range(1, n + 1):
        verdict = is_gorenstein_projective(simple_module(algebra, j))
        assert verdict.is_gp
        assert verdict.against_algebra.period == (0, n)
        assert verdict.against_transpose.is_certified


def test_a2_simple_is_not_gorenstein_projective(a2):
    verdict = is_gorenstein_projective(simple_module(a2, 1))
    assert verdict.verdict == "not_gp"
    assert verdict.is_decisive
    assert verdict.against_algebra.is_nonzero
    assert (verdict.against_algebra.degree, verdict.against_algebra.dimension) == (1, 1)


def test_projectives_are_gorenstein_projective(a2, semisimple3):
    for algebra in (a2, semisimple3):
        for vertex in algebra.vertices:
            assert is_gorenstein_projective(projective_module(algebra, vertex)).is_gp


def test_loop_simple(loop):
    simple = simple_module(loop, 1)
    assert is_gorenstein_projective(simple).is_gp
    certificate = is_self_orthogonal(simple)
    assert certificate.is_nonzero
    assert certificate.degree == 1


def test_verdict_dict(lambda4):
    verdict = is_gorenstein_projective(simple_module(lambda4, 1))
    record = verdict.to_dict()
    assert record["verdict"] == "gp"
    assert record["ext_against_algebra"]["period"] == [0, 4]
    assert record["ext_of_transpose"]["kind"] == "certified_vanishing"


def test_witness_maps_earlier_syzygy_to_later(lambda4):
    module = simple_module(lambda4, 2)
    certificate = ext_vanishing_certificate(module, regular_module(lambda4))
    a, b = certificate.period
    assert certificate.witness.source.dimension_vector == syzygy(module, a).dimension_vector
    assert certificate.witness.target.dimension_vector == syzygy(module, b).dimension_vector
