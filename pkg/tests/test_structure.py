from itertools import combinations

import numpy as np
import pytest

import oracles
from mtgroups.catalog import abelian, cyclic, default_catalog, dihedral, small_catalog, symmetric
from mtgroups.errors import BoundExceeded, HypothesisNotSatisfied, NotSolvable
from mtgroups.perm_core import PermGroup, parse_permutation
from mtgroups.structure import (
    PrimeSet,
    all_subgroups,
    core_of_subgroup,
    coset_action,
    fitting_subgroup,
    frattini_subgroup,
    group_predicates,
    hall_subgroup,
    is_normal,
    maximal_subgroups,
    normal_subgroups,
    p_part,
    quotient_group,
    subgroup,
    sylow_subgroup,
    trivial_subgroup,
    whole_group,
)


def P(text, n):
    return parse_permutation(text, n)


def as_sets(subs):
    return {frozenset(e.images for e in H.elements) for H in subs}


def tuples(G):
    return [e.images for e in G.elements]


class TestLattice:
    def test_s3(self, s3):
        subs = all_subgroups(s3)
        assert [H.order for H in subs] == [1, 2, 2, 2, 3, 6]

    def test_trivial(self):
        assert len(all_subgroups(PermGroup([], 3))) == 1

    def test_c4(self, c4):
        assert [H.order for H in all_subgroups(c4)] == [1, 2, 4]

    def test_sorted_by_order_then_elements(self):
        subs = all_subgroups(symmetric(4))
        keys = [H.sort_key() for H in subs]
        assert keys == sorted(keys)

    @pytest.mark.parametrize("entry", [e for e in small_catalog(16)], ids=lambda e: e.name)
    def test_matches_subset_scan(self, entry):
        G = entry.group
        assert as_sets(all_subgroups(G)) == oracles.subgroups_by_subsets(tuples(G))

    def test_bound(self, monkeypatch):
        monkeypatch.setenv("MINTRANS_LATTICE_BOUND", "10")
        with pytest.raises(BoundExceeded):
            all_subgroups(symmetric(4))

    def test_maximal_s3(self, s3):
        assert sorted(M.order for M in maximal_subgroups(s3)) == [2, 2, 2, 3]

    def test_maximal_c4(self, c4):
        assert [M.order for M in maximal_subgroups(c4)] == [2]

    def test_maximal_klein(self, c2xc2):
        assert [M.order for M in maximal_subgroups(c2xc2)] == [2, 2, 2]

    def test_normal_s4(self):
        assert [N.order for N in normal_subgroups(symmetric(4))] == [1, 4, 12, 24]


class TestCore:
    def test_s3_transposition(self, s3):
        A = subgroup(s3, [P("(1 2)", 3)])
        assert core_of_subgroup(s3, A).is_trivial()

    def test_whole(self, s3):
        G = whole_group(s3)
        assert core_of_subgroup(s3, G) == G

    def test_normal_is_own_core(self):
        G = symmetric(4)
        for N in normal_subgroups(G):
            assert core_of_subgroup(G, N) == N

    @pytest.mark.parametrize("entry", small_catalog(24), ids=lambda e: e.name)
    def test_against_conjugate_intersection(self, entry):
        G = entry.group
        els = tuples(G)
        subs = all_subgroups(G)
        oracle_subs = as_sets(subs)
        for A in subs:
            aset = frozenset(e.images for e in A.elements)
            expect = oracles.core(aset, els)
            assert frozenset(e.images for e in core_of_subgroup(G, A).elements) == expect
            assert expect == oracles.largest_normal_inside(aset, oracle_subs, els)


class TestCosetAction:
    def test_s3_on_transposition(self, s3):
        A = subgroup(s3, [P("(1 2)", 3)])
        rec = coset_action(s3, A)
        assert rec.degree == 3
        assert rec.kernel.is_trivial()
        assert rec.image.order == 6 and rec.image.is_transitive()

    def test_trivial_gives_regular(self):
        G = symmetric(4)
        rec = coset_action(G, trivial_subgroup(G))
        assert rec.degree == 24 and rec.image.order == 24
        assert all(len(set(rec.images[:, i])) == 24 for i in range(24))

    def test_normal_kernel(self):
        G = symmetric(4)
        V = normal_subgroups(G)[1]
        rec = coset_action(G, V)
        assert rec.kernel == V
        assert rec.image.order == 6

    def test_point_zero_is_A(self):
        G = symmetric(4)
        for A in all_subgroups(G):
            rec = coset_action(G, A)
            # A fixes coset 0 and is exactly its stabilizer
            stab = np.flatnonzero(rec.images[:, 0] == 0)
            assert stab.tolist() == A.indices.tolist()
            assert rec.coset_labels[0].is_identity()

    def test_cosets_ordered_by_least_element(self):
        G = symmetric(4)
        A = subgroup(G, [P("(1 2)", 4)])
        rec = coset_action(G, A)
        reps = [G.index_of(r) for r in rec.coset_labels]
        assert reps == sorted(reps)

    def test_element_map_is_homomorphism(self):
        G = dihedral(5)
        A = subgroup(G, [G.generators[1]])
        rec = coset_action(G, A)
        for a in G.elements:
            for b in G.elements:
                assert rec.element_map(a * b) == rec.element_map(a) * rec.element_map(b)

    def test_matches_brute_force_cosets(self):
        G = symmetric(4)
        els = tuples(G)
        for A in all_subgroups(G):
            aset = [e.images for e in A.elements]
            cosets = oracles.right_cosets(aset, els)
            rec = coset_action(G, A)
            assert rec.degree == len(cosets)
            index = {x: i for i, c in enumerate(cosets) for x in c}
            for g in G.elements:
                img = rec.element_map(g)
                for i, c in enumerate(cosets):
                    x = sorted(c)[0]
                    assert img(i) == index[oracles.compose(x, g.images)]


class TestQuotient:
    def test_s3_mod_c3(self, s3):
        N = sylow_subgroup(s3, 3)
        Q = quotient_group(s3, N)
        assert Q.group.order == 2

    def test_mod_trivial(self):
        G = dihedral(4)
        Q = quotient_group(G, trivial_subgroup(G))
        assert Q.group.order == 8 and Q.group.degree == 8

    def test_mod_whole(self):
        G = dihedral(4)
        assert quotient_group(G, whole_group(G)).group.order == 1

    def test_not_normal(self, s3):
        with pytest.raises(HypothesisNotSatisfied):
            quotient_group(s3, subgroup(s3, [P("(1 2)", 3)]))

    def test_projection_is_homomorphism_with_kernel_n(self):
        G = symmetric(4)
        for N in normal_subgroups(G):
            Q = quotient_group(G, N)
            proj = Q.projection
            mul, qmul = G.mul, Q.group.mul
            assert np.array_equal(qmul[proj[:, None], proj[None, :]], proj[mul])
            assert np.flatnonzero(proj == 0).tolist() == N.indices.tolist()
            assert len(set(proj.tolist())) == Q.group.order


class TestSylowHall:
    def test_s3_sylow3(self, s3):
        S = sylow_subgroup(s3, 3)
        assert S == subgroup(s3, [P("(1 2 3)", 3)])

    def test_s3_sylow5(self, s3):
        assert sylow_subgroup(s3, 5).is_trivial()

    def test_c4_sylow2(self, c4):
        assert sylow_subgroup(c4, 2).is_whole()

    def test_sylow_lex_least(self):
        G = symmetric(4)
        S = sylow_subgroup(G, 2)
        cands = [H for H in all_subgroups(G) if H.order == 8]
        assert S.indices.tolist() == min(H.indices.tolist() for H in cands)

    def test_deterministic(self):
        a = sylow_subgroup(symmetric(5), 2).indices.tolist()
        b = sylow_subgroup(symmetric(5), 2).indices.tolist()
        assert a == b

    def test_hall(self, s3):
        assert hall_subgroup(s3, PrimeSet((3,))) == sylow_subgroup(s3, 3)
        assert hall_subgroup(s3, PrimeSet((2, 3))).is_whole()
        assert hall_subgroup(s3, PrimeSet()).is_trivial()

    def test_hall_not_solvable(self):
        from mtgroups.catalog import alternating

        with pytest.raises(NotSolvable):
            hall_subgroup(alternating(5), PrimeSet((2, 3)))

    def test_hall_index_coprime(self):
        G = direct_product_s3_c5()
        for pi in ([2], [3], [5], [2, 3], [3, 5], [2, 5]):
            H = hall_subgroup(G, PrimeSet(tuple(pi)))
            assert all((G.order // H.order) % p for p in pi)


def direct_product_s3_c5():
    from mtgroups.catalog import direct_product

    return direct_product(symmetric(3), cyclic(5))


class TestFittingFrattini:
    def test_fitting_s3(self, s3):
        assert fitting_subgroup(s3) == sylow_subgroup(s3, 3)

    def test_fitting_abelian(self):
        G = abelian(4, 6)
        assert fitting_subgroup(G).is_whole()

    def test_fitting_klein(self, klein):
        assert fitting_subgroup(klein).is_whole()

    @pytest.mark.parametrize("entry", default_catalog(100), ids=lambda e: e.name)
    def test_fitting_is_largest_nilpotent_normal(self, entry):
        G = entry.group
        F = fitting_subgroup(G)
        assert is_normal(F)
        assert group_predicates(F.as_group()).is_nilpotent
        for N in normal_subgroups(G):
            if group_predicates(N.as_group()).is_nilpotent:
                assert N <= F

    def test_frattini_s3(self, s3):
        assert frattini_subgroup(s3).is_trivial()

    def test_frattini_c4(self, c4):
        assert frattini_subgroup(c4).order == 2

    def test_frattini_elementary_abelian(self):
        assert frattini_subgroup(abelian(2, 2, 2)).is_trivial()
        assert frattini_subgroup(abelian(3, 3)).is_trivial()

    @pytest.mark.parametrize("entry", small_catalog(24), ids=lambda e: e.name)
    def test_frattini_is_nongenerators(self, entry):
        G = entry.group
        els = tuples(G)
        subs = oracles.subgroups_by_generators(els)
        expect = oracles.frattini_nongenerators(els, subs)
        assert frozenset(e.images for e in frattini_subgroup(G).elements) == expect

    @pytest.mark.parametrize("entry", [e for e in default_catalog(64) if e.order > 24], ids=lambda e: e.name)
    def test_frattini_nongenerators_medium(self, entry):
        # non-generator characterization, checked against the lattice
        G = entry.group
        phi = frattini_subgroup(G)
        subs = all_subgroups(G)
        for g in range(G.order):
            nongen = True
            for H in subs:
                if H.is_whole() or g in H:
                    continue
                from mtgroups.structure import generate

                if generate(G, [g], seed=H).is_whole():
                    nongen = False
                    break
            assert nongen == (g in phi)


class TestPredicates:
    def test_s3(self, s3):
        p = group_predicates(s3)
        assert p.is_solvable and not p.is_nilpotent and not p.is_simple and not p.is_abelian
        assert p.prime_set == PrimeSet((2, 3))

    def test_klein(self, klein):
        p = group_predicates(klein)
        assert p.is_elementary_abelian and p.is_nilpotent and p.prime_set == PrimeSet((2,))

    def test_c5(self):
        p = group_predicates(cyclic(5))
        assert p.is_simple and p.is_abelian and p.prime_set == PrimeSet((5,))

    def test_a5_simple_nonsolvable(self):
        from mtgroups.catalog import alternating

        p = group_predicates(alternating(5))
        assert p.is_simple and not p.is_solvable

    def test_c4_not_elementary(self, c4):
        assert not group_predicates(c4).is_elementary_abelian

    @pytest.mark.parametrize("entry", default_catalog(200), ids=lambda e: e.name)
    def test_against_sympy(self, entry):
        sympy_groups = pytest.importorskip("sympy.combinatorics")
        G = entry.group
        if G.order == 1:
            return
        S = sympy_groups.PermutationGroup([sympy_groups.Permutation(list(g.images)) for g in G.generators])
        p = group_predicates(G)
        assert S.order() == G.order
        assert p.is_abelian == S.is_abelian
        assert p.is_nilpotent == S.is_nilpotent
        assert p.is_solvable == S.is_solvable


class TestHelpers:
    def test_p_part(self):
        assert p_part(360, 2) == 8 and p_part(360, 3) == 9 and p_part(360, 7) == 1

    def test_prime_set(self):
        assert PrimeSet.of(360) == PrimeSet((2, 3, 5))
        assert PrimeSet.of(360).part(360) == 360
        assert PrimeSet((3,)).part(360) == 9
        with pytest.raises(ValueError):
            PrimeSet((4,))

    def test_subgroup_lagrange(self):
        for entry in small_catalog(24):
            for H in all_subgroups(entry.group):
                assert entry.order % H.order == 0


def test_subgroup_generation_pairs():
    # joins agree with closure of the union on a small group
    from mtgroups.structure import join

    G = symmetric(4)
    subs = all_subgroups(G)
    for A, B in combinations(subs[:12], 2):
        J = join(A, B)
        ref = oracles.closure([e.images for e in A.generators + B.generators], 4)
        assert frozenset(e.images for e in J.elements) == ref
