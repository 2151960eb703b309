"""Tests for the quantum determinant and the Hopf structure."""

import pytest
import sympy

from theta_instantons.algebra import NCPolynomial, gens, hom_violations
from theta_instantons.catalog import build_c4_theta, build_sl2h
from theta_instantons.errors import HomomorphismError, PresentationError
from theta_instantons.hopf import (
    BlockFactorization,
    antipode_images,
    check_complements,
    check_determinant,
    check_epsilon,
    check_homogeneous_spaces,
    check_hopf_axioms,
    check_sp_ideal,
    classical_image,
    classical_matrix,
    classical_symbols,
    coproduct,
    corris_images,
    counit,
    determinant,
    epsilon,
    epsilon_bar,
    gram_matrix,
    permutation_sign,
    pi_j_images,
    quotient_map,
    sp_unitarity_substitution,
)
from theta_instantons.phase import HALF, MU, MUBAR, ONE


@pytest.fixture
def sl():
    return build_sl2h()


class TestEpsilon:
    """Tests for the deformed epsilon tensor."""

    def test_mu_orbit(self):
        assert epsilon((1, 3, 2, 4)) == MU
        assert epsilon((4, 1, 3, 2)) == MU

    def test_mubar_orbit(self):
        assert epsilon((1, 4, 2, 3)) == MUBAR
        assert epsilon_bar((1, 4, 2, 3)) == MU

    def test_identity(self):
        assert epsilon((1, 2, 3, 4)) == ONE

    def test_permutation_sign(self):
        assert permutation_sign((1, 2, 3, 4)) == 1
        assert permutation_sign((2, 1, 3, 4)) == -1
        assert permutation_sign((2, 3, 4, 1)) == -1


class TestStructureMaps:
    """Tests for coproduct, counit and antipode images."""

    def test_counit_on_letters(self, sl):
        g = gens(sl)
        assert counit(g["a1"]) == 1
        assert counit(g["a1*"]) == 1
        assert counit(g["b1"]) == 0
        assert counit(g["a2*"]) == 0

    def test_coproduct_has_four_terms(self, sl):
        delta = coproduct(NCPolynomial.gen(sl, "a1"))
        assert delta.legs == (sl, sl)
        assert len(delta) == 4

    def test_counit_is_coproduct_unit(self, sl):
        g = gens(sl)
        f = g["a1"] * g["d2"]
        assert counit(coproduct(f), 0) == f

    def test_antipode_covers_every_letter(self, sl):
        assert set(antipode_images(sl)) == set(sl.letter_names())

    def test_quotient_maps_are_homomorphisms(self, sl):
        assert hom_violations(sl, pi_j_images()) == []
        assert hom_violations(sl, corris_images()) == []


class TestQuotientMaps:
    """Tests for the named quotient maps."""

    @pytest.fixture
    def z1(self):
        return NCPolynomial.gen(build_c4_theta(), "z1")

    def test_sp_unitarity_keeps_diagonal_blocks(self, sl, z1):
        form = BlockFactorization({(1, 1): z1, (1, 2): z1 * z1, (2, 2): z1}, HALF)
        assert sp_unitarity_substitution(form) == NCPolynomial.of(sl, 1) @ z1

    def test_sp_unitarity_drops_off_diagonal_blocks(self, z1):
        form = BlockFactorization({(2, 3): z1})
        assert sp_unitarity_substitution(form).is_zero()

    def test_expand_keeps_gram_entries(self, sl, z1):
        form = BlockFactorization({(1, 2): z1})
        assert form.legs == (sl, build_c4_theta())
        assert form.expand() == gram_matrix().at(1, 2) @ z1

    def test_lookup_by_name(self, sl):
        assert quotient_map("sp_unitarity_substitution") is sp_unitarity_substitution
        pi_j = quotient_map("pi_J_theta")
        g = gens(sl)
        assert pi_j(g["a1"]) == g["a1"]
        assert pi_j(g["b1"]).is_zero()

    def test_block_quotient_is_not_a_homomorphism(self):
        with pytest.raises(HomomorphismError):
            quotient_map("pi_I_theta")

    def test_unknown_name(self):
        with pytest.raises(PresentationError, match="unknown quotient map"):
            quotient_map("pi_K_theta")


class TestClassicalLimit:
    """Tests for the commutative image at mu = 1."""

    def test_determinant_reduces_to_classical(self, sl):
        symbols = classical_symbols(sl)
        expected = sympy.expand(classical_matrix(sl, symbols).det())
        assert classical_image(determinant(), symbols) == expected

    def test_determinant_terms(self, sl):
        assert len(determinant()) > 0
        assert determinant().legs == (sl,)


class TestHopfChecks:
    """Tests for the Hopf, ideal and quotient check groups."""

    def test_hopf_axioms(self, run_group):
        results = run_group(check_hopf_axioms)
        assert results["hopf.coassociativity"].passed
        assert results["hopf.counit.left"].passed

    def test_hopf_axioms_stretch(self, run_group):
        results = run_group(check_hopf_axioms, stretch=True)
        assert any(check_id.startswith("hopf.antipode.") for check_id in results)

    def test_epsilon(self, run_group):
        results = run_group(check_epsilon)
        assert results["epsilon.relations"].passed

    def test_sp_ideal(self, run_group):
        results = run_group(check_sp_ideal)
        assert results["sp-ideal.antipode"].status.value == "skipped-structural"
        assert results["sp-ideal.coproduct"].passed

    def test_homogeneous_spaces(self, run_group):
        results = run_group(check_homogeneous_spaces)
        assert results["homogeneous.corris.homomorphism"].passed
        coinvariants = results["homogeneous.pi_J.coinvariants"]
        assert coinvariants.passed
        assert coinvariants.metrics["modulo"] == "block-unitarity"


@pytest.mark.slow
class TestDeterminantChecks:
    """Tests for the determinant groups; these expand large products."""

    def test_determinant(self, run_group):
        results = run_group(check_determinant)
        assert results["determinant.expansions"].passed
        assert results["determinant.classical"].passed

    def test_complements(self, run_group):
        results = run_group(check_complements)
        assert results["complements.classical"].passed
