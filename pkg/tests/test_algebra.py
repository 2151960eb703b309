"""Tests for presentations and polynomial arithmetic."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from theta_instantons.algebra import (
    FreePresentation,
    Letter,
    NCPolynomial,
    Presentation,
    TensorPolynomial,
    apply_hom,
    commutator,
    differential,
    gens,
    hom_violations,
    leg_collect,
    normal_order,
    normal_order_naive,
    phase_between,
    validate_hom,
)
from theta_instantons.catalog import build_c4_theta, build_forms_c4, build_sl2h, j_map
from theta_instantons.errors import HomomorphismError, PresentationError
from theta_instantons.phase import LAMBDA, MU, MUBAR, ONE, mu_power


@pytest.fixture
def c4():
    return build_c4_theta()


@pytest.fixture
def z(c4):
    return gens(c4)


def twisted_pair() -> Presentation:
    return Presentation("pair", [Letter("x"), Letter("y")], {("x", "y"): 2})


class TestPresentation:
    """Tests for Presentation construction and validation."""

    def test_relation_is_antisymmetric(self):
        p = twisted_pair()
        assert p.relation("x", "y") == LAMBDA
        assert p.relation("y", "x") == LAMBDA.conj()

    def test_odd_letters_anticommute(self):
        p = Presentation("odd", [Letter("a", 1), Letter("b", 1)])
        assert p.relation("a", "b") == -ONE
        assert p.odd_letters() == [0, 1]

    def test_duplicate_letter_rejected(self):
        with pytest.raises(PresentationError, match="duplicate"):
            Presentation("bad", [Letter("x"), Letter("x")])

    def test_conflicting_phases_rejected(self):
        with pytest.raises(PresentationError, match="conflicting"):
            Presentation("bad", [Letter("x"), Letter("y")], {("x", "y"): 1, ("y", "x"): 1})

    def test_star_must_be_involution(self):
        letters = [Letter("x", 0, "y"), Letter("y", 0, "y")]
        with pytest.raises(PresentationError, match="involution"):
            Presentation("bad", letters)

    def test_star_must_preserve_phases(self):
        letters = [Letter("x", 0, "x*"), Letter("x*", 0, "x"), Letter("y")]
        with pytest.raises(PresentationError, match="star-compatible"):
            Presentation("bad", letters, {("x", "y"): 1})

    def test_unknown_letter(self, c4):
        with pytest.raises(PresentationError):
            c4.index("w7")

    def test_c4_letters(self, c4):
        assert c4.letter_names() == ["z1", "z2", "z3", "z4", "z1*", "z2*", "z3*", "z4*"]
        assert c4.star_index(c4.index("z1")) == c4.index("z1*")


class TestNormalOrder:
    """Tests for normal ordering of words."""

    def test_swap_picks_up_phase(self, c4):
        assert normal_order(c4, ["z3", "z1"]) == normal_order(c4, ["z1", "z3"]).scale(MUBAR)

    def test_commuting_letters(self, c4):
        assert normal_order(c4, ["z2", "z1"]) == normal_order(c4, ["z1", "z2"])

    def test_odd_square_vanishes(self):
        forms = build_forms_c4()
        assert normal_order(forms, ["dz1", "dz1"]).is_zero()
        assert normal_order_naive(forms, ["dz1", "z2", "dz1"]).is_zero()

    def test_odd_swap_sign(self):
        forms = build_forms_c4()
        assert normal_order(forms, ["dz2", "dz1"]) == -normal_order(forms, ["dz1", "dz2"])

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.integers(min_value=0, max_value=15), max_size=10))
    def test_agrees_with_transpositions(self, word):
        p = build_forms_c4()
        assert normal_order(p, word) == normal_order_naive(p, word)

    def test_text(self, c4, z):
        assert (z["z3"] * z["z1"]).to_text() == "mubar * z1*z3"
        assert (z["z1*"] * z["z1"] - 1).to_text() == "z1*z1' - 1"


class TestArithmetic:
    """Tests for products, stars and tensor legs."""

    def test_associative(self, z):
        a, b, c = z["z1"] + z["z3*"], z["z2"] * z["z4"], z["z3"] - z["z1*"]
        assert (a * b) * c == a * (b * c)

    def test_star_reverses_products(self, z):
        a, b = z["z1"] + z["z2"], z["z3"] * z["z4*"]
        assert (a * b).star() == b.star() * a.star()

    def test_star_conjugates_coefficients(self, z):
        assert z["z1"].scale(MU).star() == z["z1*"].scale(MUBAR)

    def test_scalar_multiplication(self, z):
        assert z["z1"] * 2 == 2 * z["z1"] == z["z1"] + z["z1"]

    def test_power(self, z):
        assert z["z1"] ** 3 == z["z1"] * z["z1"] * z["z1"]

    def test_different_legs_rejected(self, z):
        sl = build_sl2h()
        with pytest.raises(PresentationError):
            z["z1"] + NCPolynomial.gen(sl, "a1")

    def test_tensor_product(self, c4, z):
        sl = build_sl2h()
        t = NCPolynomial.gen(sl, "a1") @ z["z1"]
        assert t.legs == (sl, c4)
        assert t.to_text() == "a1 @ z1"

    def test_tensor_multiplication_per_leg(self, z):
        sl = build_sl2h()
        a = gens(sl)
        left = (a["b1"] @ z["z1"]) * (a["a1"] @ z["z3"])
        right = (a["b1"] * a["a1"]) @ (z["z1"] * z["z3"])
        assert left == right

    def test_leg_collect(self, c4, z):
        sl = build_sl2h()
        a = gens(sl)
        t = a["a1"] @ z["z1"] + a["a2"] @ z["z1"]
        grouped = leg_collect(t, 1)
        assert list(grouped) == [c4.letter_monomial(c4.index("z1"))]
        assert grouped[c4.letter_monomial(c4.index("z1"))] == a["a1"] + a["a2"]

    def test_phase_between(self, z):
        assert phase_between(z["z1"], z["z3"]) == MU
        assert phase_between(z["z1"], z["z1"] + z["z3"]) is None

    def test_phase_between_high_power_non_unit_coefficient(self, z):
        g = z["z3"].scale(MU + ONE)
        assert phase_between(z["z1"] ** 5, g) == mu_power(5)
        assert phase_between(g, z["z1"] ** 5) == mu_power(-5)

    def test_phase_between_odd_letters(self):
        d = gens(build_forms_c4())
        assert phase_between(d["dz1"], d["dz2"]) == -ONE

    def test_commutator(self, z):
        assert commutator(z["z1"], z["z2"]).is_zero()
        assert not commutator(z["z1"], z["z3"]).is_zero()


class TestFreePresentation:
    """Tests for the free algebra on the same letters."""

    def test_words_do_not_reduce(self):
        free = FreePresentation("free", [Letter("x"), Letter("y")])
        x, y = NCPolynomial.gen(free, "x"), NCPolynomial.gen(free, "y")
        assert x * y != y * x
        assert (x * y).to_text() == "x*y"

    def test_star_reverses_words(self):
        free = FreePresentation("free", [Letter("x", 0, "y"), Letter("y", 0, "x")])
        x = NCPolynomial.gen(free, "x")
        y = NCPolynomial.gen(free, "y")
        assert (x * x * y).star() == x * y * y


class TestDifferential:
    """Tests for the graded differential on forms."""

    def test_square_is_zero(self):
        forms = build_forms_c4()
        w = gens(forms)
        f = w["z1"] * w["z3*"] + w["z2"] * w["dz4"]
        assert differential(differential(f)).is_zero()

    def test_leibniz_even(self):
        forms = build_forms_c4()
        w = gens(forms)
        a, b = w["z1"], w["z3"]
        assert differential(a * b) == differential(a) * b + a * differential(b)

    def test_leibniz_odd(self):
        forms = build_forms_c4()
        w = gens(forms)
        a, b = w["dz1"], w["z3"]
        assert differential(a * b) == -(a * differential(b))

    def test_requires_differential(self, z):
        with pytest.raises(PresentationError, match="no differential"):
            differential(z["z1"])


class TestHomomorphisms:
    """Tests for homomorphism validation and application."""

    def test_identity_accepted(self, c4, z):
        assert hom_violations(c4, z) == []

    def test_quaternionic_structure(self, c4, z):
        validate_hom(c4, j_map(c4), antilinear=True, anti=True)

    def test_rejects_broken_map(self, c4, z):
        images = dict(z)
        images["z1"], images["z3"] = z["z3"], z["z1"]
        with pytest.raises(HomomorphismError) as exc:
            validate_hom(c4, images)
        assert exc.value.relation

    def test_apply_scalar_map(self, c4, z):
        counit = {name: 1 for name in c4.letter_names()}
        assert apply_hom(z["z1"] * z["z3"] + 2, counit) == 3

    def test_apply_into_tensor(self, c4, z):
        sl = build_sl2h()
        images = {name: NCPolynomial.gen(sl, "a1") @ z[name] for name in ("z1", "z2")}
        result = apply_hom(z["z1"] * z["z2"], images)
        assert isinstance(result, TensorPolynomial)
        assert result.legs == (sl, c4)

    def test_missing_image(self, c4, z):
        with pytest.raises(HomomorphismError, match="no image"):
            apply_hom(z["z1"] * z["z4"], {"z1": z["z1"]})
