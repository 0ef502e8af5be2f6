import itertools

import pytest

from qkincidence.combinatorics import TildeIndex, bruhat_leq, enumerate_wp, i_set
from qkincidence.oracle import PermutationOracle, sn_bruhat_leq


class TestOracle:
    def test_examples(self):
        o = PermutationOracle(3)
        assert sn_bruhat_leq(o, (2, 1, 3), (2, 3, 1))
        assert not sn_bruhat_leq(o, (2, 3, 1), (2, 1, 3))
        assert all(o.leq(p, p) for p in o.group)
        assert all(o.leq(p, (3, 2, 1)) for p in o.group)

    def test_rejects_non_permutations(self):
        o = PermutationOracle(4)
        with pytest.raises(ValueError):
            o.leq((1, 2, 2, 4), (1, 2, 3, 4))
        with pytest.raises(ValueError):
            o.label((2, 4, 3, 1))
        with pytest.raises(ValueError):
            PermutationOracle(2)

    def test_coset_representatives(self):
        o = PermutationOracle(5)
        w = TildeIndex(4, 2, 5)
        assert o.permutation(w) == (4, 1, 3, 5, 2)
        assert o.label(o.permutation(w)) == w

    def test_figure_panels(self):
        o = PermutationOracle(5)
        T = lambda i, j: TildeIndex(i, j, 5)  # noqa: E731
        assert o.i_set(T(4, 1)) == {T(4, 1), T(3, 1), T(4, 2), T(3, 2)}
        assert o.i_set(T(1, 2)) == {T(1, 2), T(1, 3)}

    @pytest.mark.parametrize("n", range(3, 6))
    def test_matches_closed_forms(self, n):
        o = PermutationOracle(n)
        W = enumerate_wp(n)
        for u, v in itertools.product(W, W):
            assert o.leq(o.permutation(u), o.permutation(v)) == bruhat_leq(u, v)
        for v in W:
            assert o.i_set(v) == i_set(v)
