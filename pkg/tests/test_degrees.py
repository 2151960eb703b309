"""Tests for torus degrees and the phases they predict."""

from fractions import Fraction

import pytest

from theta_instantons.algebra import gens
from theta_instantons.catalog import (
    ROW_WEIGHTS,
    S4_ANCHORS,
    build_c4_theta,
    build_s4_generators,
    build_sl2h,
    covering_image,
    row_degrees,
    z_degrees,
)
from theta_instantons.degrees import (
    DegreeVector,
    commutation_phase,
    letter_degree,
    pairing_quadrupled,
    polynomial_degree,
    solve_letter_degrees,
    star_product_phase,
)
from theta_instantons.errors import DegreeError
from theta_instantons.phase import LAMBDA, MU, ONE

HALF = Fraction(1, 2)


class TestDegreeVector:
    """Tests for DegreeVector arithmetic."""

    def test_doubled_storage(self):
        d = DegreeVector.of(HALF, -1)
        assert d.doubled == (1, -2)
        assert d.values == (HALF, Fraction(-1))
        assert str(d) == "(1/2, -1)"

    def test_rejects_thirds(self):
        with pytest.raises(DegreeError, match="half-integer"):
            DegreeVector.of(Fraction(1, 3), 0)

    def test_arithmetic(self):
        a, b = DegreeVector.of(1, 0), DegreeVector.of(HALF, HALF)
        assert a + b == DegreeVector.of(Fraction(3, 2), HALF)
        assert a - a == DegreeVector.of(0, 0)
        assert -b == DegreeVector.of(-HALF, -HALF)

    def test_direct_sum_and_swap(self):
        d = DegreeVector.of(1, 0).direct_sum(DegreeVector.of(0, -1))
        assert d.arity == 4
        assert d.swapped() == DegreeVector.of(0, 1, -1, 0)

    def test_arity_mismatch(self):
        with pytest.raises(DegreeError, match="arity"):
            pairing_quadrupled(DegreeVector.of(1, 0), DegreeVector.of(1, 0, 0, 1))


class TestPhases:
    """Tests for the phases induced by degrees."""

    def test_pairing(self):
        assert pairing_quadrupled(DegreeVector.of(1, 0), DegreeVector.of(0, 1)) == 4

    def test_star_product_phase(self):
        assert star_product_phase(DegreeVector.of(1, 0), DegreeVector.of(0, 1)) == MU

    def test_commutation_phase_is_squared(self):
        assert commutation_phase(DegreeVector.of(1, 0), DegreeVector.of(0, 1)) == LAMBDA

    def test_half_integer_pairing(self):
        z1, z3 = DegreeVector.of(HALF, HALF), DegreeVector.of(-HALF, HALF)
        assert commutation_phase(z1, z3) == MU
        with pytest.raises(DegreeError, match="not an integer"):
            star_product_phase(z1, z3)

    def test_self_commutes(self):
        d = DegreeVector.of(HALF, -HALF)
        assert commutation_phase(d, d) == ONE


class TestSolvedDegrees:
    """Tests for the solved sphere coordinate degrees."""

    def test_z_degrees(self):
        degrees = z_degrees()
        assert degrees["z1"] == DegreeVector.of(HALF, HALF)
        assert degrees["z2"] == DegreeVector.of(HALF, HALF)
        assert degrees["z3"] == DegreeVector.of(-HALF, HALF)
        assert degrees["z4"] == DegreeVector.of(-HALF, HALF)
        assert degrees["z1*"] == -degrees["z1"]

    def test_solver_reproduces_catalog(self):
        p = build_c4_theta()
        solved = solve_letter_degrees(p, S4_ANCHORS, build_s4_generators(p))
        assert solved == z_degrees()

    def test_sphere_generator_degrees(self):
        s4 = build_s4_generators(build_c4_theta())
        assert polynomial_degree(s4["alpha"]) == DegreeVector.of(1, 0)
        assert polynomial_degree(s4["beta"]) == DegreeVector.of(0, 1)
        assert polynomial_degree(s4["x"]) == DegreeVector.of(0, 0)

    def test_inconsistent_anchor(self):
        p = build_c4_theta()
        with pytest.raises(DegreeError, match="inconsistent"):
            solve_letter_degrees(p, {"x": (1, 0)}, build_s4_generators(p))

    def test_mixed_degree_rejected(self):
        z = gens(build_c4_theta())
        with pytest.raises(DegreeError, match="not homogeneous"):
            polynomial_degree(z["z1"] + z["z3"])

    def test_rows_cover_weights(self):
        rows = row_degrees()
        assert [covering_image(rows[i]) for i in range(1, 5)] == list(ROW_WEIGHTS)

    def test_sl2h_degrees_predict_relations(self):
        sl = build_sl2h()
        for x in sl.letter_names():
            for y in sl.letter_names():
                predicted = commutation_phase(letter_degree(sl, x), letter_degree(sl, y))
                assert predicted == sl.relation(x, y), (x, y)
