"""Tests for the SL(2,H) coaction and the SO(5,1) data."""

import pytest

from theta_instantons.algebra import NCPolynomial, gens, hom_violations
from theta_instantons.catalog import build_c4_theta, build_forms_c4, build_sl2h, build_u
from theta_instantons.coaction import (
    check_bialgebra_relations,
    check_coaction_maps,
    check_inflated_sphere,
    check_so51,
    check_top_form,
    check_transf4_fixtures,
    delta_l,
    delta_l_images,
    fixture_row,
    inflated_generators,
    minor,
    nu,
    so51_data,
)
from theta_instantons.phase import LAMBDA, ONE


class TestCoaction:
    """Tests for the left coaction on coordinates and forms."""

    def test_image_legs(self):
        c4 = build_c4_theta()
        w1 = delta_l(gens(c4)["z1"])
        assert w1.legs == (build_sl2h(), c4)
        assert len(w1) == 4

    def test_homomorphism_on_c4(self):
        c4 = build_c4_theta()
        assert hom_violations(c4, delta_l_images(c4, build_sl2h())) == []

    def test_forms_images_include_differentials(self):
        forms = build_forms_c4()
        images = delta_l_images(forms, build_sl2h())
        assert set(images) == set(forms.letter_names())

    def test_constant_is_fixed(self):
        c4 = build_c4_theta()
        one = NCPolynomial.of(c4, 1)
        assert delta_l(one) == NCPolynomial.of(build_sl2h(), 1) @ one

    def test_inflated_symbols(self):
        symbols = inflated_generators().symbols()
        assert {"xt", "at", "bt", "rho2", "z1", "z4*"} <= set(symbols)


class TestSo51Data:
    """Tests for minors, the change of basis and nu."""

    def test_nu(self):
        assert nu(3, 5) == LAMBDA
        assert nu(5, 3) == LAMBDA.conj()
        assert nu(1, 1) == ONE

    def test_diagonal_minor_vanishes(self):
        u = build_u(build_c4_theta())
        assert minor(u, 1, 1).is_zero()

    def test_change_of_basis_is_invertible(self):
        data = so51_data()
        for i in range(6):
            for j in range(6):
                entry = sum((data.t[i][k] * data.t_inverse[k][j] for k in range(6)), ONE - ONE)
                assert entry == (1 if i == j else 0)

    def test_c_matrix_shape(self):
        assert so51_data().c.shape == (6, 6)

    def test_fixture_row_slots(self):
        row = fixture_row("alpha")
        assert set(row) == set(range(1, 7))


class TestCoactionChecks:
    """Tests for the coaction check groups."""

    def test_coaction_maps(self, run_group):
        results = run_group(check_coaction_maps)
        assert results["coaction.c4.homomorphism"].passed
        assert results["coaction.forms.homomorphism"].passed

    def test_top_form(self, run_group):
        run_group(check_top_form)

    def test_transf4_fixtures(self, run_group):
        results = run_group(check_transf4_fixtures)
        for suffix in ("x", "alpha", "beta", "rho"):
            assert f"coaction.transf4.{suffix}" in results


@pytest.mark.slow
class TestSlowCoactionChecks:
    """Tests for the groups that expand the inflated sphere and SO(5,1) data."""

    def test_bialgebra_relations(self, run_group):
        results = run_group(check_bialgebra_relations)
        assert results["coaction.unitarity.factorization"].metrics["cases"] == 4
        assert results["coaction.unitarity.symplectic"].passed

    def test_inflated_sphere(self, run_group):
        results = run_group(check_inflated_sphere)
        assert results["coaction.rho.central"].passed
        assert results["coaction.rho.factorization"].passed
        assert results["coaction.rho.symplectic"].metrics["free"] is False

    def test_so51(self, run_group):
        results = run_group(check_so51)
        assert results["so51.c-matrix.metric.reduced"].metrics["modulo"] == "det=1"
        assert results["so51.c-matrix.det"].status.value == "skipped-structural"
        assert results["so51.c-matrix.nu"].passed
