"""Tests for the concentration indices."""

import math
import random

import pytest

from leimkuhler.curves import Family, gp, gpg, gpig, pagb, pareto, pg, pig, power
from leimkuhler.empirical import CitationDataset, empirical_curve
from leimkuhler.indices import (
    CLOSED_FORM,
    QUADRATURE,
    SEARCH,
    IndexReport,
    empirical_indices,
    generalized_gini,
    gini,
    gini_via_mixture,
    model_indices,
    pietra,
)
from tests.test_curves import draw_model


class TestGini:
    def test_closed_form_pins(self):
        # references verified against 40-digit quadrature of 2*int(K)-1
        pins = [
            (power(3.832), 0.6570644718792867),
            (power(2.767), 0.580448919655968),
            (gp(2.5, 0.7), 0.61395521588356449),
            (pareto(0.645), 0.47601476014760147),
            (pareto(0.606), 0.43472022955523676),
            (pg(0.701, 0.102), 0.5915382646195355),
            (pg(0.392, 0.055), 0.5025675715686309),
        ]
        for model, expected in pins:
            value, method = gini(model)
            assert method == CLOSED_FORM
            assert value == pytest.approx(expected, abs=1e-12), model.family

    def test_quadrature_pins(self):
        pins = [
            (pig(9.305, 2.227), 0.60113647593505488),
            (pig(14.035, 1.029), 0.518811406771376),
            (gpg(0.554, 1.514, 0.596), 0.60697893815125311),
            (gpig(0.799, 10.765, 0.742), 0.51656836912058347),
            (pagb(2.0, 3.0, -5.0), 0.45783744278909632),
            (pagb(1.2, 0.8, 3.5), 0.22744749710543569),
        ]
        for model, expected in pins:
            value, method = gini(model)
            assert method == QUADRATURE
            assert value == pytest.approx(expected, abs=1e-9), model.family

    def test_closed_matches_quadrature(self):
        rng = random.Random(515)
        for family in (Family.POWER, Family.GP, Family.PARETO, Family.PG):
            for _ in range(25):
                model = draw_model(rng, family)
                closed = gini(model, method="closed_form").value
                quadrature = gini(model, method="quadrature").value
                assert closed == pytest.approx(quadrature, abs=1e-8), model.param_values()

    def test_power_limit_is_zero(self):
        assert gini(power(1e-12)).value == pytest.approx(0.0, abs=1e-12)

    def test_monotone_in_theta(self):
        thetas = [0.05 * k for k in range(1, 40)]
        power_vals = [gini(power(t)).value for t in thetas]
        assert all(a < b for a, b in zip(power_vals, power_vals[1:]))
        pareto_vals = [gini(pareto(t / 41.0)).value for t in range(1, 41)]
        assert all(a < b for a, b in zip(pareto_vals, pareto_vals[1:]))

    def test_in_unit_interval_for_random_draws(self):
        rng = random.Random(616)
        for family in Family:
            for _ in range(5):
                value = gini(draw_model(rng, family)).value
                assert 0.0 <= value <= 1.0

    def test_method_validation(self):
        with pytest.raises(ValueError, match="unknown method"):
            gini(power(1.0), method="guess")
        with pytest.raises(ValueError, match="closed-form"):
            gini(pig(2.0, 1.0), method="closed_form")
        with pytest.raises(ValueError, match="tol"):
            gini(power(1.0), tol=0.0)


class TestGeneralizedGini:
    def test_reduces_to_gini_at_unit_r(self):
        rng = random.Random(717)
        for family in Family:
            for _ in range(5):
                model = draw_model(rng, family)
                g1 = generalized_gini(model, 1.0).value
                g = gini(model).value
                assert abs(g1 - g) <= 1e-9, (family, model.param_values())

    def test_closed_form_pins(self):
        assert generalized_gini(power(2.0), 1.0).value == pytest.approx(0.5, abs=1e-14)
        assert generalized_gini(power(2.0), 2.0).value == pytest.approx(0.8, abs=1e-14)
        assert generalized_gini(pareto(0.5), 1.0).value == pytest.approx(1.0 / 3.0, abs=1e-12)
        got = generalized_gini(pareto(0.645), 0.5)
        assert got.method == CLOSED_FORM
        assert got.value == pytest.approx(0.25006394120141227, abs=1e-12)
        assert generalized_gini(pg(0.701, 0.102), 0.5).value == pytest.approx(
            0.31894327180175264, abs=1e-12)
        assert generalized_gini(pg(0.701, 0.102), 2.0).value == pytest.approx(
            1.0445787587900756, abs=1e-12)

    def test_quadrature_pins(self):
        pins = [
            (gp(2.5, 0.7), 0.5, 0.33832361773538244),
            (gp(2.5, 0.7), 2.0, 1.0409993141238642),
            (pig(9.305, 2.227), 0.5, 0.32638680694658379),
            (pig(9.305, 2.227), 2.0, 1.0520910850232776),
            (pagb(2.0, 3.0, -5.0), 0.5, 0.23918088313978883),
        ]
        for model, r, expected in pins:
            got = generalized_gini(model, r)
            assert got.method == QUADRATURE
            assert got.value == pytest.approx(expected, abs=1e-9), (model.family, r)

    def test_closed_matches_quadrature(self):
        rng = random.Random(818)
        for family in (Family.POWER, Family.PARETO, Family.PG):
            for _ in range(10):
                model = draw_model(rng, family)
                for r in (0.5, 1.0, 2.0, 3.7):
                    closed = generalized_gini(model, r, method="closed_form").value
                    quadrature = generalized_gini(model, r, method="quadrature").value
                    assert closed == pytest.approx(quadrature, abs=1e-8), (
                        model.param_values(), r)

    def test_rejects_bad_r(self):
        for r in (0.0, -1.0, math.inf, math.nan):
            with pytest.raises(ValueError, match="r must be"):
                generalized_gini(power(1.0), r)


class TestPietra:
    def test_power_closed_form(self):
        got = pietra(power(1.0))
        assert got.method == CLOSED_FORM
        assert got.value == pytest.approx(0.25, abs=1e-14)
        assert got.argmax_u == pytest.approx(0.5, abs=1e-14)

    def test_power_pins(self):
        assert pietra(power(3.832)).value == pytest.approx(0.5257370498254195, abs=1e-12)
        assert pietra(power(2.767)).value == pytest.approx(0.45482824967860797, abs=1e-12)

    def test_power_limit_is_zero(self):
        assert pietra(power(1e-9)).value == pytest.approx(0.0, abs=1e-9)

    def test_pareto_corrected_closed_form(self):
        got = pietra(pareto(0.606))
        assert got.method == CLOSED_FORM
        assert got.value == pytest.approx(0.3307336764643958, abs=1e-12)
        assert got.argmax_u == pytest.approx(0.21503146621612529, abs=1e-12)

    def test_closed_matches_search(self):
        rng = random.Random(919)
        for family in (Family.POWER, Family.PARETO):
            for _ in range(20):
                model = draw_model(rng, family)
                closed = pietra(model, method="closed_form")
                searched = pietra(model, tol=1e-12, method="search")
                assert closed.value == pytest.approx(searched.value, abs=1e-9)
                assert closed.argmax_u == pytest.approx(searched.argmax_u, abs=1e-5)

    def test_search_pins(self):
        pins = [
            (pig(9.305, 2.227), 0.45365307708129937, 0.290047),
            (pig(14.035, 1.029), 0.38121845385199216, 0.300131),
            (gp(2.5, 0.7), 0.47273244759792426, 0.35196183794764338),
            (gpg(0.554, 1.514, 0.596), 0.46072810276609039, 0.30225859450223075),
            (gpig(0.799, 10.765, 0.742), 0.3812801301591192, 0.29554707150045487),
            (pagb(2.0, 3.0, -5.0), 0.35254253521898479, 0.18153266616609801),
        ]
        for model, expected, argmax in pins:
            got = pietra(model, tol=1e-10)
            assert got.method == SEARCH
            assert got.value == pytest.approx(expected, abs=1e-9), model.family
            assert got.argmax_u == pytest.approx(argmax, abs=1e-5), model.family

    def test_argmax_precision_follows_tol(self):
        coarse = pietra(pig(9.305, 2.227), tol=1e-3)
        fine = pietra(pig(9.305, 2.227), tol=1e-12)
        assert abs(coarse.argmax_u - fine.argmax_u) <= 2e-3


class TestMixtureGini:
    def test_pg_three_routes_agree(self):
        model = pg(0.701, 0.102)
        closed = gini(model, method="closed_form").value
        quadrature = gini(model, method="quadrature").value
        mixture = gini_via_mixture(model)
        assert closed == pytest.approx(quadrature, abs=1e-8)
        assert closed == pytest.approx(mixture, abs=1e-8)

    def test_mixture_route_matches_quadrature(self):
        models = [
            pig(9.305, 2.227),
            gpg(0.554, 1.514, 0.596),
            gpig(0.799, 10.765, 0.742),
            pagb(2.0, 3.0, -5.0),
        ]
        for model in models:
            direct = gini(model, method="quadrature").value
            mixture = gini_via_mixture(model)
            assert direct == pytest.approx(mixture, abs=1e-7), model.family

    def test_rejects_non_mixture_family(self):
        with pytest.raises(ValueError, match="not a mixture"):
            gini_via_mixture(power(1.0))


class TestModelIndices:
    def test_report_shape(self):
        report = model_indices(pg(0.701, 0.102), r_values=(0.5, 1.0, 2.0))
        assert report.gini == pytest.approx(0.5915382646195355, abs=1e-10)
        assert [r for r, _ in report.generalized_gini] == [0.5, 1.0, 2.0]
        assert report.method_tags["gini"] == CLOSED_FORM
        assert report.method_tags["pietra"] == SEARCH

    def test_invariant_enforced(self):
        with pytest.raises(ValueError, match="disagrees"):
            IndexReport(gini=0.5, generalized_gini=((1.0, 0.6),), pietra=0.3,
                        pietra_argmax_u=0.4, method_tags={})
        with pytest.raises(ValueError, match="outside"):
            IndexReport(gini=1.5, generalized_gini=(), pietra=0.3,
                        pietra_argmax_u=0.4, method_tags={})


class TestEmpiricalIndices:
    def test_known_polygon(self):
        report = empirical_indices(empirical_curve(CitationDataset((4, 3, 2, 1))))
        assert report.gini == pytest.approx(0.25, abs=1e-15)
        assert report.pietra == pytest.approx(0.2, abs=1e-15)
        assert report.pietra_argmax_u == pytest.approx(0.5, abs=1e-15)

    def test_generalized_exact_segment_values(self):
        # references from 40-digit per-segment integration
        report = empirical_indices(empirical_curve(CitationDataset((4, 3, 2, 1))),
                                   r_values=(0.5, 1.0, 2.0))
        values = dict(report.generalized_gini)
        assert values[0.5] == pytest.approx(0.1487710226273589, abs=1e-12)
        assert values[1.0] == pytest.approx(0.25, abs=1e-12)
        assert values[2.0] == pytest.approx(0.375, abs=1e-12)

    def test_unit_r_matches_gini_for_random_datasets(self):
        rng = random.Random(111)
        for _ in range(30):
            counts = [rng.randint(0, 40) for _ in range(rng.randint(2, 50))]
            counts[0] += 1
            report = empirical_indices(empirical_curve(CitationDataset(tuple(counts))),
                                       r_values=(1.0,))
            assert abs(report.generalized_gini[0][1] - report.gini) <= 1e-9

    def test_even_counts_give_zero(self):
        report = empirical_indices(empirical_curve(CitationDataset((1, 1, 1, 1))))
        assert report.gini == 0.0
        assert report.pietra == 0.0

    def test_single_dominant_source(self):
        report = empirical_indices(empirical_curve(CitationDataset((1, 0, 0, 0))))
        assert report.gini == pytest.approx(0.75, abs=1e-15)
        assert report.pietra == pytest.approx(0.75, abs=1e-15)
        assert report.pietra_argmax_u == pytest.approx(0.25, abs=1e-15)

    def test_rejects_degenerate_curve(self):
        curve = empirical_curve(CitationDataset((5,)))
        trimmed = type(curve)(points=curve.points[:1], source_n=1)
        with pytest.raises(ValueError, match="at least 2"):
            empirical_indices(trimmed)
