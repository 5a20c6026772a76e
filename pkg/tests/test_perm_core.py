import pytest

import oracles
from mtgroups import perm_core
from mtgroups.errors import BoundExceeded
from mtgroups.perm_core import (
    OrbitSystem,
    PermGroup,
    Permutation,
    compose,
    format_permutation,
    group_closure,
    inverse,
    orbits_and_transitivity,
    parse_permutation,
    power,
)


def P(text, n):
    return parse_permutation(text, n)


class TestParse:
    def test_identity(self):
        p = P("()", 4)
        assert p.images == (0, 1, 2, 3)
        assert p.is_identity()

    def test_three_cycle(self):
        assert P("(1 2 3)", 3).images == (1, 2, 0)

    def test_two_transpositions(self):
        assert P("(1 2)(3 4)", 4).images == (1, 0, 3, 2)

    def test_commas_and_spaces(self):
        assert P("(1,2, 3) ( 4 5 )", 5) == P("(1 2 3)(4 5)", 5)

    def test_unmentioned_points_fixed(self):
        assert P("(2 3)", 5).images == (0, 2, 1, 3, 4)

    @pytest.mark.parametrize("text", ["(1 2", "1 2)", "(1 2)x", "(a b)", "(1 2)(3 (4))", ""])
    def test_malformed(self, text):
        with pytest.raises(ValueError):
            P(text, 5)

    def test_repeated_point(self):
        with pytest.raises(ValueError):
            P("(1 2)(2 3)", 4)
        with pytest.raises(ValueError):
            P("(1 2 1)", 4)

    def test_point_too_large(self):
        with pytest.raises(ValueError):
            P("(1 5)", 4)
        with pytest.raises(ValueError):
            P("(0 1)", 4)

    @pytest.mark.parametrize("text", ["()", "(1 2 3)", "(1 4)(2 3)", "(1 3 5 2)"])
    def test_round_trip(self, text):
        p = P(text, 5)
        assert P(format_permutation(p), 5) == p
        assert format_permutation(p) == text


class TestArithmetic:
    def test_convention_left_to_right(self):
        # apply a first, then b
        a, b = P("(1 2)", 3), P("(2 3)", 3)
        ab = compose(a, b)
        assert ab(0) == b(a(0)) == 2
        assert ab == P("(1 3 2)", 3)
        assert a * b == ab

    def test_identity_is_neutral(self):
        x = P("(1 3 2 4)", 4)
        e = Permutation.identity(4)
        assert compose(e, x) == x == compose(x, e)

    def test_square_of_three_cycle(self):
        c = P("(1 2 3)", 3)
        assert compose(c, c) == P("(1 3 2)", 3)

    def test_inverse(self):
        assert inverse(P("(1 2 3)", 3)) == P("(1 3 2)", 3)

    def test_power_laws(self):
        x = P("(1 2 3 4 5)(6 7)", 7)
        assert power(x, 0).is_identity()
        assert power(x, 10).is_identity()
        assert power(x, -1) == inverse(x)
        assert power(x, 3) == compose(power(x, 1), power(x, 2))
        assert power(power(x, 2), 3) == power(x, 6)
        assert x.order() == 10

    def test_degree_mismatch(self):
        with pytest.raises(ValueError):
            compose(P("(1 2)", 2), P("(1 2)", 3))

    def test_invalid_images(self):
        with pytest.raises(ValueError):
            Permutation([0, 0, 1])
        with pytest.raises(ValueError):
            Permutation([])

    def test_cycle_type(self):
        assert P("(1 2 3)(4 5)", 6).cycle_type() == (3, 2, 1)


class TestClosure:
    def test_s3(self):
        G = group_closure([P("(1 2 3)", 3), P("(1 2)", 3)])
        assert G.order == 6
        ref = oracles.closure([(1, 2, 0), (1, 0, 2)], 3)
        assert {p.images for p in G.elements} == ref

    def test_empty_generators(self):
        G = group_closure([], 5)
        assert G.order == 1
        assert G.elements[0].is_identity()

    def test_cyclic4(self):
        G = group_closure([P("(1 2 3 4)", 4)])
        assert G.order == 4
        assert {p.images for p in G.elements} == oracles.closure([(1, 2, 3, 0)], 4)

    def test_sorted_elements_identity_first(self):
        G = group_closure([P("(1 2 3 4)", 4), P("(1 2)", 4)])
        imgs = [p.images for p in G.elements]
        assert imgs == sorted(imgs)
        assert G.elements[0].is_identity()

    def test_membership(self):
        G = group_closure([P("(1 2 3)(4 5)", 5)])
        assert P("(1 3 2)", 5) in G
        assert P("(4 5)", 5) in G
        assert P("(1 2)", 5) not in G

    def test_multiplication_table(self):
        G = group_closure([P("(1 2 3 4)", 4), P("(1 3)", 4)])
        els = G.elements
        for i, a in enumerate(els):
            for j, b in enumerate(els):
                assert els[G.mul[i, j]] == a * b
            assert els[G.inv[i]] == a.inverse()

    def test_order_cap(self):
        with pytest.raises(BoundExceeded):
            group_closure([P("(1 2 3 4 5 6 7 8)", 8), P("(1 2)", 8)], cap=1000).order

    def test_order_cap_env(self, monkeypatch):
        monkeypatch.setenv("MINTRANS_MAX_ORDER", "100")
        assert perm_core.order_cap() == 100
        with pytest.raises(BoundExceeded):
            PermGroup([P("(1 2 3 4 5)", 5), P("(1 2)", 5)]).order

    def test_s7_order(self):
        assert group_closure([P("(1 2 3 4 5 6 7)", 7), P("(1 2)", 7)]).order == 5040


class TestOrbits:
    def test_s3_transitive(self):
        orb, trans = orbits_and_transitivity(PermGroup([P("(1 2 3)", 3), P("(1 2)", 3)]))
        assert trans and orb.blocks == ((0, 1, 2),)
        assert orb.block_size == 3

    def test_transposition_on_four(self):
        orb, trans = orbits_and_transitivity(PermGroup([P("(1 2)", 4)]))
        assert not trans
        assert orb.blocks == ((0, 1), (2,), (3,))
        assert orb.block_size is None

    def test_klein_transitive(self):
        G = PermGroup([P("(1 2)(3 4)", 4), P("(1 3)(2 4)", 4)])
        orb, trans = orbits_and_transitivity(G)
        assert trans
        assert oracles.is_transitive([g.images for g in G.generators], 4)

    def test_block_of(self):
        orb = OrbitSystem(5, ((0, 3), (1, 2, 4)))
        assert orb.block_of() == [0, 1, 1, 0, 1]
