"""Tests for the geometry module."""

import pytest

from src.services.geometry import (
    DirectedEdge,
    ExactPoint,
    OctagonalPoint,
    Surd,
    chords_noncrossing,
    mirror_direction,
    sq_dist,
    undirected,
    winding_number,
)

I = ExactPoint(0, 0, 0, 1)
ONE = ExactPoint.one()


class TestSurd:
    """Test exact arithmetic on r + s*sqrt(k)."""

    def test_equality_with_integers(self):
        """Test that rational surds compare equal to integers."""
        assert Surd(5) == 5
        assert Surd(5, 1) != 5

    def test_sign_of_mixed_surd(self):
        """Test the exact sign when both parts are non-zero."""
        assert (Surd(0, 1) - 1).sign() == 1
        assert (Surd(2) - Surd(0, 1)).sign() == 1
        assert (Surd(1) - Surd(0, 1)).sign() == -1

    def test_ordering(self):
        """Test comparison operators."""
        assert Surd(0, 1) > 1
        assert Surd(0, 1) < 2
        assert Surd(3) >= 3

    def test_multiplication(self):
        """Test (1 + sqrt3)^2 = 4 + 2 sqrt3."""
        value = Surd(1, 1) * Surd(1, 1)
        assert value == Surd(4, 2)

    def test_mixing_radicands_raises(self):
        """Test that sqrt2 and sqrt3 cannot be mixed."""
        with pytest.raises(ValueError):
            _ = Surd(0, 1, 2) + Surd(0, 1, 3)


class TestExactPoint:
    """Test the ring of twelfth roots of unity."""

    def test_units(self):
        """Test powers of the root of unity."""
        assert ExactPoint.unit(0) == ONE
        assert ExactPoint.unit(3) == I
        assert ExactPoint.unit(6) == -ONE
        assert ExactPoint.unit(12) == ONE

    def test_multiplication(self):
        """Test (1 + i)^2 = 2i."""
        assert (ONE + I) * (ONE + I) == I * 2

    def test_rotate_matches_unit_multiplication(self):
        """Test that rotation by k steps equals multiplying by the k-th unit."""
        p = ExactPoint(2, -1, 3, 1)
        for k in range(12):
            assert p.rotate(k) == p * ExactPoint.unit(k)

    def test_conjugate(self):
        """Test conjugation of i and of a real number."""
        assert I.conj() == -I
        assert ExactPoint(4, 0, 0, 0).conj() == ExactPoint(4, 0, 0, 0)

    def test_norm(self):
        """Test exact squared moduli."""
        assert ExactPoint(2, 0, 0, 1).norm() == 5
        assert ExactPoint(1, 0, 1, 0).norm() == 3
        assert ExactPoint.unit(1).norm() == 1

    def test_divide_exact(self):
        """Test an exact quotient."""
        assert (I * 2).divide(ONE + I) == ONE + I

    def test_divide_not_in_ring(self):
        """Test that 1/2 is not a ring element."""
        assert ONE.divide(ExactPoint(2, 0, 0, 0)) is None

    def test_divide_by_zero(self):
        """Test division by the zero point."""
        with pytest.raises(ZeroDivisionError):
            ONE.divide(ExactPoint.zero())

    def test_to_complex(self):
        """Test the floating point image."""
        value = ExactPoint(0, 0, 1, 0).to_complex()
        assert value.real == pytest.approx(0.5)
        assert value.imag == pytest.approx(3**0.5 / 2)

    def test_mirror_y(self):
        """Test the reflection (x, y) -> (-x, y)."""
        assert ONE.mirror_y() == -ONE
        assert I.mirror_y() == I


class TestOctagonalPoint:
    """Test the ring of eighth roots of unity."""

    def test_units(self):
        """Test that eight steps make a full turn."""
        assert OctagonalPoint.unit(8) == OctagonalPoint.one()
        assert OctagonalPoint.unit(4) == -OctagonalPoint.one()

    def test_diagonal_norm(self):
        """Test |1 + zeta8|^2 = 2 + sqrt2."""
        assert (OctagonalPoint.one() + OctagonalPoint.unit(1)).norm() == Surd(2, 1, 2)


class TestEdgesAndWinding:
    """Test edges, chord diagrams and winding numbers."""

    def test_directed_edge_end(self):
        """Test the end point of a unit edge."""
        assert DirectedEdge(ExactPoint.zero(), 3).end == I

    def test_undirected_is_canonical(self):
        """Test that both orientations give the same key."""
        assert undirected(ONE, I) == undirected(I, ONE)
        assert DirectedEdge(ExactPoint.zero(), 0).undirected() == DirectedEdge(ONE, 6).undirected()

    def test_sq_dist(self):
        """Test the squared distance."""
        assert sq_dist(ExactPoint.zero(), ExactPoint(2, 0, 0, 1)) == 5

    def test_mirror_direction(self):
        """Test mirrored direction indices."""
        assert mirror_direction(0) == 6
        assert mirror_direction(3) == 3
        assert mirror_direction(1, 8) == 3

    def test_chords_noncrossing(self):
        """Test nested, disjoint and crossing chords."""
        assert chords_noncrossing([(0, 3), (6, 9)])
        assert chords_noncrossing([(0, 9), (3, 6)])
        assert not chords_noncrossing([(0, 6), (3, 9)])
        assert chords_noncrossing([(None, 0), (3, 9)])

    def test_winding_number_of_unit_square(self):
        """Test that a unit square winds once around its centre and not around a far point."""
        loop = [ExactPoint.zero(), ONE, ONE + I, I, ExactPoint.zero()]
        assert abs(winding_number(loop, ONE + I, scale=2)) == 1
        assert winding_number(loop, ExactPoint(6, 0, 0, 6), scale=2) == 0
