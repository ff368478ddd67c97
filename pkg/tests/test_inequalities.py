import dataclasses
import math

import pytest

from staticlab import BoundaryComponent, de_sitter
from staticlab import inequalities as IQ

S3_AREA = 4 * math.pi


def test_all_equalities_on_de_sitter(ds3):
    reports = [
        IQ.area_bound(ds3),
        IQ.willmore_bound(ds3),
        IQ.scalar_average_bound(ds3),
        IQ.mon_glob_bound(ds3, 1),
        IQ.n3_uniqueness_inequality(ds3),
    ]
    for rep in reports:
        assert rep.status == "pass", rep.name
        assert rep.equality, rep.name
        assert abs(rep.lhs - rep.rhs) <= 1e-9, rep.name
    over = IQ.overdetermined_condition(ds3, 0.5)
    assert over.status == "pass" and over.abs_residual <= 1e-9
    grad = IQ.gradient_bound(ds3)
    assert grad.status == "pass" and abs(grad.extra["min_margin"]) <= 1e-12


def test_lambda_negative_equalities_on_anti_de_sitter(ads3):
    for rep in (IQ.area_bound(ads3), IQ.willmore_bound(ads3),
                IQ.mon_glob_bound(ads3, 1)):
        assert rep.status == "pass", rep.name
        assert rep.equality, rep.name
        assert abs(rep.lhs - rep.rhs) <= 1e-9, rep.name
    over = IQ.overdetermined_condition(ads3, 2.0)
    assert over.status == "pass" and over.abs_residual <= 1e-9
    grad = IQ.gradient_bound(ads3)
    assert grad.status == "pass"


def test_de_sitter_n4_scalar_average(ds4):
    rep = IQ.scalar_average_bound(ds4)
    assert rep.equality
    assert rep.lhs == pytest.approx(2 * math.pi ** 2, rel=1e-12)
    assert rep.rhs == pytest.approx(2 * math.pi ** 2, rel=1e-12)


def test_lp_bound_equality_on_round_models(ds3, ads3):
    rep = IQ.lp_gradient_bound(ds3, 3, 0.5)
    assert rep.status == "pass" and rep.equality
    rep = IQ.lp_gradient_bound(ads3, 3, 2.0)
    assert rep.status == "pass" and rep.equality
    with pytest.raises(ValueError):
        IQ.lp_gradient_bound(ds3, 2, 0.5)


def test_gradient_bound_sds_locates_violation(sds01):
    rep = IQ.gradient_bound(sds01)
    assert rep.status == "inapplicable"  # gravity bound fails, not a failure
    assert rep.extra["min_margin"] < 0.0
    lo, hi = rep.extra["violation_interval"]
    assert lo == pytest.approx(sds01.domain[0], abs=1e-6)
    assert hi == pytest.approx(sds01.domain[1], abs=1e-6)


def test_no_fail_verdicts_when_assumptions_violated(sds01, nariai3):
    """Counterexample families must never produce a 'fail'."""
    for tr in (sds01, nariai3):
        reports = [
            IQ.gradient_bound(tr),
            IQ.area_bound(tr),
            IQ.willmore_bound(tr),
            IQ.scalar_average_bound(tr),
            IQ.lp_gradient_bound(tr, 3, 0.5),
            IQ.overdetermined_condition(tr, 0.5),
            IQ.n3_uniqueness_inequality(tr),
            IQ.mon_glob_bound(tr, 1),
        ]
        for rep in reports:
            assert rep.status == "inapplicable", (tr.name, rep.name)


def test_sds_informational_values(sds01):
    # the two-horizon family still produces the right side numerically
    will = IQ.willmore_bound(sds01)
    assert will.extra["rhs"] == pytest.approx(303.54414315058636, rel=1e-9)
    assert will.extra["rhs"] > S3_AREA
    uni = IQ.n3_uniqueness_inequality(sds01)
    kappas = sorted(b.surface_gravity for b in sds01.boundaries)
    assert uni.extra["rhs"] == pytest.approx(2 * sum(kappas), rel=1e-12)
    over = IQ.overdetermined_condition(sds01, 0.5)
    assert max(abs(v) for v in over.extra["per_sphere"]) > 1e-3


def test_overdetermined_condition_nariai(nariai3):
    # the product solution happens to satisfy the overdetermining relation
    # pointwise; the verdict is still gated on the gravity bound
    rep = IQ.overdetermined_condition(nariai3, 0.5)
    assert rep.status == "inapplicable"
    assert rep.abs_residual <= 1e-9


def test_n3_uniqueness_two_boundary_arithmetic(ds3):
    """Synthetic two-component boundary with unit gravities: 2 < 4."""
    fake = dataclasses.replace(
        ds3,
        boundaries=(
            BoundaryComponent(0.99, 1.0, 1.0, 2),
            BoundaryComponent(1.0, 1.0, 1.0, 2),
        ))
    rep = IQ.n3_uniqueness_inequality(fake)
    assert rep.lhs == 2.0 and rep.rhs == 4.0
    assert rep.status == "pass"
    assert not rep.equality  # disconnected boundary: no rigidity claim


def test_n3_uniqueness_requires_dimension_three(ds4):
    rep = IQ.n3_uniqueness_inequality(ds4)
    assert rep.status == "inapplicable"


def test_mon_glob_admissible_exponents(ds3, ds4):
    assert IQ.mon_glob_bound(ds3, 0.5).status == "pass"
    assert IQ.mon_glob_bound(ds3, 2).status == "inapplicable"  # n=3 caps at 1
    assert IQ.mon_glob_bound(ds4, 3).status == "pass"
    assert IQ.mon_glob_bound(ds4, 4).status == "inapplicable"


def test_mon_glob_chain_n5():
    # constant potential data in dimension five: the whole chain collapses
    # to the area of the round S^4
    tr = de_sitter(5)
    rep = IQ.mon_glob_bound(tr, 3)
    from staticlab import unit_sphere_area
    s4 = unit_sphere_area(5)
    assert rep.status == "pass" and rep.equality
    assert rep.lhs == pytest.approx(s4, rel=1e-12)
    assert rep.rhs == pytest.approx(s4, rel=1e-12)
    assert rep.extra["upper"] == pytest.approx(s4, rel=1e-12)


def test_mon_glob_chain_values(ds3):
    rep = IQ.mon_glob_bound(ds3, 1)
    assert rep.lhs == pytest.approx(S3_AREA, rel=1e-12)
    assert rep.rhs == pytest.approx(S3_AREA, rel=1e-12)
    assert rep.extra["upper"] == pytest.approx(S3_AREA, rel=1e-12)
    assert rep.extra["chain_holds"]


def test_implication_chain(all_models):
    """Whenever the global chain bound passes, the boundary-curvature
    bounds pass as well, across the model set."""
    for tr in all_models:
        p = 1 if tr.n == 3 else 3
        glob = IQ.mon_glob_bound(tr, p)
        if glob.status == "pass":
            assert IQ.willmore_bound(tr).status == "pass", tr.name
            if tr.lambda_sign > 0:
                assert IQ.scalar_average_bound(tr).status == "pass", tr.name


def test_scalar_average_refused_for_negative_constant(ads3):
    assert IQ.scalar_average_bound(ads3).status == "inapplicable"
