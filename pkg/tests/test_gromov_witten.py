import itertools

import pytest

from qkincidence.coefficients import phi_twist
from qkincidence.combinatorics import (
    Degree, TildeIndex, ZERO, bruhat_leq, effective_degrees, enumerate_wp, iota,
    q_shift,
)
from qkincidence.formats import parse_coefficient, parse_element
from qkincidence.gromov_witten import (
    RichardsonDescriptor, TruncatedSeries, gamma_divisor, gamma_opposite,
    gamma_schubert, gw_divisor_closed, gw_divisor_dual, gw_divisor_qclassical,
    odot_divisor, psi, psi_inverse, q_degree_set, q_interval_check, three_point,
)
from qkincidence.qkring import QKElement, chevalley_mult


def T(i, j, n=5):
    return TildeIndex(i, j, n)


def C(text, n=5):
    return parse_coefficient(text, n)


class TestCurveNeighbourhoods:
    def test_schubert_examples(self):
        assert gamma_schubert(T(2, 3), Degree(1, 0)) == T(5, 3)
        assert gamma_schubert(T(2, 3), ZERO) == T(2, 3)
        assert gamma_schubert(T(1, 3), Degree(2, 1)) == T(5, 1)

    def test_schubert_boundary_cases(self):
        assert gamma_schubert(T(2, 5), Degree(1, 0)) == T(4, 5)
        assert gamma_schubert(T(1, 4), Degree(0, 2)) == T(1, 2)
        assert gamma_schubert(T(3, 4), Degree(0, 1)) == T(3, 1)

    def test_opposite_examples(self):
        assert gamma_opposite(T(3, 4), Degree(1, 0)) == T(1, 4)
        assert gamma_opposite(T(3, 1), Degree(1, 0)) == T(2, 1)
        assert gamma_opposite(T(3, 4), ZERO) == T(3, 4)
        assert gamma_opposite(T(5, 2), Degree(0, 3)) == T(5, 4)
        assert gamma_opposite(T(2, 4), Degree(0, 1)) == T(2, 5)
        assert gamma_opposite(T(5, 2), Degree(1, 1)) == T(1, 5)

    def test_negative_degree_rejected(self):
        with pytest.raises(ValueError):
            gamma_schubert(T(2, 3), Degree(-1, 0))
        with pytest.raises(ValueError):
            gamma_opposite(T(2, 3), Degree(0, -1))

    def test_divisor_examples(self):
        assert gamma_divisor(T(2, 3), Degree(1, 0), 1) == RichardsonDescriptor(T(5, 3), None)
        assert gamma_divisor(T(2, 3), Degree(1, 0), 2) == RichardsonDescriptor(T(5, 3), 2)
        assert gamma_divisor(T(2, 3), ZERO, 1) == RichardsonDescriptor(T(2, 3), 1)

    @pytest.mark.parametrize("n", range(3, 6))
    def test_monotone(self, n):
        degrees = list(effective_degrees(Degree(2, 2)))
        for u in enumerate_wp(n):
            for d, d2 in itertools.product(degrees, degrees):
                if d <= d2:
                    assert bruhat_leq(gamma_opposite(u, d2), gamma_opposite(u, d))
                    assert bruhat_leq(gamma_schubert(u, d), gamma_schubert(u, d2))

    @pytest.mark.parametrize("n", range(3, 6))
    def test_bruhat_criterion_for_neighbourhoods(self, n):
        # z <= [a,b]  iff  x <= a + d1*n and y >= b - d2*n, where X^z = Gamma_d(X^[x,y])
        W = enumerate_wp(n)
        for xb in W:
            for e1, e2 in itertools.product(range(-1, 3), repeat=2):
                x = q_shift(xb, Degree(e1, e2))
                for d in effective_degrees(Degree(2, 2)):
                    rest = d - x.degree
                    if not rest.is_effective:
                        continue
                    z = gamma_opposite(xb, rest)
                    for ab in W:
                        expected = x.i <= ab.i + d.d1 * n and x.j >= ab.j - d.d2 * n
                        assert bruhat_leq(z, ab) == expected


class TestPsi:
    def test_unit(self):
        s = psi(QKElement.unit(5), Degree(1, 1))
        assert s.element == parse_element("O[1,5] + q1*O[1,5] + q2*O[1,5] + q1*q2*O[1,5]", 5)

    def test_top_class(self):
        s = psi(QKElement.basis(T(5, 1)), Degree(1, 1))
        expected = parse_element("O[5,1] + q1*O[2,1] + q2*O[5,4] + q1*q2*O[1,5]", 5)
        assert s.element == expected

    def test_inverse_examples(self):
        one = parse_element("O[1,5] + q1*O[1,5] + q2*O[1,5] + q1*q2*O[1,5]", 5)
        assert psi_inverse(TruncatedSeries(one, Degree(1, 1))) == QKElement.unit(5)
        top = parse_element("O[5,1] + q1*O[2,1] + q2*O[5,4] + q1*q2*O[1,5]", 5)
        assert psi_inverse(TruncatedSeries(top, Degree(1, 1))) == QKElement.basis(T(5, 1))

    @pytest.mark.parametrize("n", range(3, 6))
    def test_unitriangular_and_roundtrip(self, n):
        D = Degree(3, 3)
        for d in effective_degrees(D):
            for v in enumerate_wp(n):
                u = q_shift(v, d)
                e = QKElement.basis(u)
                s = psi(e, D)
                assert s.element.coefficient(u) == 1
                assert all(w.degree >= d for w in s.element.terms)
                assert s.element.truncate(d) == e
                assert psi_inverse(s) == e

    def test_terms_beyond_cutoff_are_dropped(self):
        e = QKElement.basis(q_shift(T(2, 3), Degree(2, 0)))
        assert not psi(e, Degree(1, 3)).element

    def test_series_rejects_overflow(self):
        with pytest.raises(ValueError):
            TruncatedSeries(QKElement.basis(q_shift(T(2, 3), Degree(2, 0))), Degree(1, 1))

    def test_linear(self):
        e = parse_element("(1 - z1)*O[2,3] + z3*q1*O[4,1]", 5)
        D = Degree(2, 2)
        parts = [psi(QKElement.basis(w, c), D).element for w, c in e.terms.items()]
        assert psi(e, D).element == parts[0] + parts[1]


class TestDivisorInvariants:
    def test_closed_examples(self):
        assert gw_divisor_closed(T(2, 3), 1, T(2, 1)) == C("1 - z1")
        assert gw_divisor_closed(T(2, 3), 1, T(7, 1)) == 1
        assert gw_divisor_closed(T(2, 3), 1, T(1, 2)) == 0

    def test_closed_negative_degree_is_zero(self):
        assert gw_divisor_closed(T(1, 5), 1, T(-3, 1)) == 0
        assert gw_divisor_closed(T(1, 5), 2, T(2, 8)) == 0

    def test_qclassical_examples(self):
        o23 = QKElement.basis(T(2, 3))
        assert gw_divisor_qclassical(o23, 1, T(2, 1), ZERO) == C("1 - z1")
        assert gw_divisor_qclassical(QKElement.unit(5), 1, T(5, 1), ZERO) == 1
        assert gw_divisor_qclassical(o23, 1, T(2, 1), Degree(1, 0)) == 1

    def test_qclassical_rejects_quantum_input(self):
        with pytest.raises(ValueError):
            gw_divisor_qclassical(parse_element("q1*O[2,3]", 5), 1, T(2, 1), ZERO)

    def test_dual_examples(self):
        assert gw_divisor_dual(T(2, 3), 1, T(3, 2)) == C("z1")
        assert gw_divisor_dual(T(2, 3), 1, T(2, 3)) == C("1 - z1")
        assert gw_divisor_dual(T(1, 5), 1, T(2, 5)) == 1

    def test_dual_matches_chevalley_coefficient(self):
        prod = chevalley_mult(QKElement.basis(T(2, 3)), 1)
        assert gw_divisor_dual(T(2, 3), 1, T(3, 2)) == prod.coefficient(T(3, 2))

    @pytest.mark.parametrize("n", range(3, 6))
    def test_quantum_equals_classical(self, n):
        W = enumerate_wp(n)
        for u in W:
            e = QKElement.basis(u)
            for k in (1, 2):
                for d in effective_degrees(Degree(2, 2)):
                    for v in W:
                        assert gw_divisor_closed(u, k, q_shift(v, d)) == \
                            gw_divisor_qclassical(e, k, v, d)

    @pytest.mark.parametrize("n", range(3, 6))
    def test_odot_is_psi_of_chevalley(self, n):
        D = Degree(3, 3)
        for u in enumerate_wp(n):
            for k in (1, 2):
                assert odot_divisor(u, k, D) == psi(chevalley_mult(QKElement.basis(u), k), D)

    @pytest.mark.parametrize("n", range(3, 6))
    def test_phi_symmetry_of_closed_forms(self, n):
        W = enumerate_wp(n)
        for u, v in itertools.product(W, W):
            for e1, e2 in itertools.product(range(-1, 3), repeat=2):
                w = q_shift(v, Degree(e1, e2))
                assert phi_twist(gw_divisor_closed(u, 1, w)) == \
                    gw_divisor_closed(iota(u), 2, iota(w))


class TestThreePoint:
    def test_examples(self):
        assert three_point(T(2, 1), T(5, 1), T(5, 1), Degree(1, 1)) == 1
        assert three_point(T(1, 2), T(3, 5), T(4, 1), ZERO) == 1
        assert three_point(T(1, 2), T(3, 5), T(3, 2), ZERO) == 0

    def test_unit_pairs_to_one(self):
        # I_0(1, 1, O_w) is the Euler characteristic of a Schubert variety
        for w in enumerate_wp(4):
            assert three_point(TildeIndex(1, 4, 4), TildeIndex(1, 4, 4), w, ZERO) == 1

    def test_negative_degree_rejected(self):
        with pytest.raises(ValueError):
            three_point(T(1, 2), T(1, 2), T(1, 2), Degree(-1, 0))

    def test_genus_zero_small(self):
        W = enumerate_wp(3)
        for u, v, w in itertools.product(W, W, W):
            for d in effective_degrees(Degree(2, 2)):
                assert three_point(u, v, w, d) in (0, 1)


class TestQInterval:
    def test_examples(self):
        assert q_interval_check(T(1, 2), T(2, 1))
        assert q_degree_set(T(1, 2), T(2, 1)) == [Degree(0, 1)]
        assert q_interval_check(T(2, 3), T(4, 5))
        assert q_degree_set(T(2, 3), T(4, 5)) == [ZERO, Degree(1, 0)]
        assert q_interval_check(T(1, 2), T(1, 2))
        assert q_degree_set(T(1, 2), T(1, 2)) == [Degree(0, 1)]

    @pytest.mark.parametrize("n", range(3, 7))
    def test_exhaustive(self, n):
        W = enumerate_wp(n)
        assert all(q_interval_check(u, v) for u, v in itertools.product(W, W))
