import pytest

import oracles
from mtgroups.catalog import (
    abelian,
    alternating,
    cyclic,
    default_catalog,
    dihedral,
    direct_product,
    regular_representation,
    small_catalog,
    symmetric,
)
from mtgroups.errors import HypothesisNotSatisfied, NotSolvable
from mtgroups.mintrans import (
    actions_equivalent,
    assemble_from_split,
    classify_degree_pq,
    fitting_split,
    find_transitive_proper_subgroup,
    is_minimally_transitive,
    is_mt_stabilizer,
    normal_q_subgroup_check,
    order_ideal_check,
    point_stabilizer,
    prime_frattini_check,
    quasiprimitive_and_simple_check,
    quotient_transfer,
    reduce_by_normal,
    reduce_piq_pipeline,
    restrict,
    squarefree_analyze,
    subgroup_descent_analyze,
    subgroup_group,
)
from mtgroups.perm_core import PermGroup, parse_permutation
from mtgroups.structure import (
    all_subgroups,
    core_of_subgroup,
    coset_action,
    fitting_subgroup,
    frattini_subgroup,
    normal_subgroups,
    product_is_whole,
    subgroup,
    sylow_subgroup,
    trivial_subgroup,
    whole_group,
)


def P(text, n):
    return parse_permutation(text, n)


def regular(G):
    return regular_representation(G)


class TestMtStabilizer:
    def test_trivial_is_mt(self):
        for entry in small_catalog(24):
            G = entry.group
            assert is_mt_stabilizer(G, trivial_subgroup(G), "all").holds

    def test_s3_sylow3_normal(self, s3):
        A = sylow_subgroup(s3, 3)
        v = is_mt_stabilizer(s3, A, "all")
        assert v.holds and core_of_subgroup(s3, A) == A

    def test_s3_sylow2_fails_with_c3(self, s3):
        B = sylow_subgroup(s3, 2)
        for method in ("definitional", "product", "maximal"):
            v = is_mt_stabilizer(s3, B, method)
            assert not v.holds
            assert v.witness == sylow_subgroup(s3, 3)

    def test_witness_invariant(self):
        G = symmetric(4)
        for A in all_subgroups(G):
            v = is_mt_stabilizer(G, A)
            if v.witness is not None:
                K = core_of_subgroup(G, A)
                assert product_is_whole(A, v.witness)
                assert not product_is_whole(v.witness, K)

    @pytest.mark.parametrize("entry", small_catalog(24), ids=lambda e: e.name)
    def test_against_brute_force(self, entry):
        G = entry.group
        els = [e.images for e in G.elements]
        subs = oracles.subgroups_by_generators(els)
        for A in all_subgroups(G):
            aset = frozenset(e.images for e in A.elements)
            assert is_mt_stabilizer(G, A, "all").holds == oracles.mt_brute(aset, els, subs)

    def test_unknown_method(self, s3):
        with pytest.raises(ValueError):
            is_mt_stabilizer(s3, trivial_subgroup(s3), "nope")


class TestMinimallyTransitive:
    def test_c4(self, c4):
        assert is_minimally_transitive(c4).holds

    def test_s3(self, s3):
        v = is_minimally_transitive(s3)
        assert not v.holds and v.witness.order == 3

    def test_klein(self, klein):
        assert is_minimally_transitive(klein).holds

    def test_intransitive(self):
        with pytest.raises(HypothesisNotSatisfied):
            is_minimally_transitive(PermGroup([P("(1 2)", 4)]))

    def test_search_agrees_with_lattice(self):
        for G in [symmetric(4), alternating(4), dihedral(4), dihedral(5), cyclic(6), symmetric(5),
                  regular(symmetric(3)), regular(alternating(4))]:
            assert (is_minimally_transitive(G, "lattice").holds
                    == is_minimally_transitive(G, "search").holds)

    def test_search_witness_is_transitive_proper(self):
        G = symmetric(5)
        gens = find_transitive_proper_subgroup(G)
        H = PermGroup(gens, 5)
        assert H.is_transitive() and H.order < G.order

    def test_point_stabilizer_equivalence(self):
        G = alternating(4)
        A = point_stabilizer(G)
        assert is_mt_stabilizer(G, A).holds == is_minimally_transitive(G).holds


class TestQuasiprimitive:
    def test_c5(self):
        G = cyclic(5)
        r = quasiprimitive_and_simple_check(G, trivial_subgroup(G))
        assert r.quasiprimitive and r.quotient_simple and r.ok

    def test_c4(self, c4):
        r = quasiprimitive_and_simple_check(c4, trivial_subgroup(c4))
        assert not r.quasiprimitive and r.ok

    def test_s3_transposition(self, s3):
        r = quasiprimitive_and_simple_check(s3, subgroup(s3, [P("(1 2)", 3)]))
        assert r.quasiprimitive and not r.is_mt and r.ok

    def test_whole_group_inapplicable(self, s3):
        with pytest.raises(HypothesisNotSatisfied):
            quasiprimitive_and_simple_check(s3, whole_group(s3))


class TestDescent:
    def test_b_equals_a(self):
        G = symmetric(4)
        for A in all_subgroups(G):
            if is_mt_stabilizer(G, A):
                assert subgroup_descent_analyze(G, A, A).case == "a"

    def test_b_equals_core(self):
        G = symmetric(4)
        for A in all_subgroups(G):
            if is_mt_stabilizer(G, A):
                assert subgroup_descent_analyze(G, A, core_of_subgroup(G, A)).case == "a"

    def test_case_b_occurs(self):
        # D4 on its 4 points: A = C4 is normal hence mt, B = the centre is mt,
        # and in C2^2 x ... look for a genuine case b over a small catalog
        seen_b = False
        for entry in small_catalog(24):
            G = entry.group
            for A in all_subgroups(G):
                if not is_mt_stabilizer(G, A):
                    continue
                for B in all_subgroups(G):
                    if B <= A:
                        r = subgroup_descent_analyze(G, A, B)
                        assert r.ok
                        if r.case == "b":
                            seen_b = True
                            assert r.witness_H is not None
        assert seen_b

    def test_precondition(self, s3):
        with pytest.raises(HypothesisNotSatisfied):
            subgroup_descent_analyze(s3, sylow_subgroup(s3, 2), trivial_subgroup(s3))


class TestOrderIdeal:
    def test_s3(self, s3):
        assert order_ideal_check(s3)

    def test_c4(self, c4):
        assert order_ideal_check(c4)


class TestNormalReduction:
    def test_klein(self, c2xc2):
        G = regular(c2xc2)
        H = [N for N in normal_subgroups(G) if N.order == 2][0]
        r = reduce_by_normal(G, trivial_subgroup(G), H)
        assert r.B == H and r.orbit_action.degree == 2 and r.ok

    def test_c4(self, c4):
        H = [N for N in normal_subgroups(c4) if N.order == 2][0]
        r = reduce_by_normal(c4, trivial_subgroup(c4), H)
        assert r.B.order == 2 and r.orbit_action.degree == 2 and r.ok

    def test_rejects_whole(self, c4):
        with pytest.raises(HypothesisNotSatisfied):
            reduce_by_normal(c4, trivial_subgroup(c4), whole_group(c4))

    def test_rejects_non_normal(self):
        G = symmetric(4)
        with pytest.raises(HypothesisNotSatisfied):
            reduce_by_normal(G, trivial_subgroup(G), subgroup(G, [P("(1 2)", 4)]))


class TestQuotientTransfer:
    def test_trivial_n(self):
        G = dihedral(4)
        for A in all_subgroups(G):
            r = quotient_transfer(G, trivial_subgroup(G), A)
            assert r.biconditional_ok

    def test_n_equals_a(self):
        G = symmetric(4)
        for N in normal_subgroups(G):
            r = quotient_transfer(G, N, N)
            assert r.mt_in_quotient and r.mt_in_G

    def test_precondition(self, s3):
        with pytest.raises(HypothesisNotSatisfied):
            quotient_transfer(s3, sylow_subgroup(s3, 3), trivial_subgroup(s3))


class TestPrimeFrattini:
    def test_c6_regular(self):
        G = cyclic(6)
        r = prime_frattini_check(G, trivial_subgroup(G))
        assert r.is_mt and r.part_i_ok and r.ok

    def test_c4_frattini(self, c4):
        A = frattini_subgroup(c4)
        r = prime_frattini_check(c4, A)
        assert A.order == 2 and r.in_frattini and r.is_mt and r.ok


class TestSplit:
    def test_s3_regular(self):
        G = regular(symmetric(3))
        rep = fitting_split(G, trivial_subgroup(G))
        assert rep.pi_star.primes == (2,)
        assert rep.fitting.order == 3 and rep.Q.order == 2
        assert [p for p, _ in rep.normal_sylows] == [3]
        assert rep.conjugates_checked == 3
        assert all(c.subgroup.order == 6 for c in rep.components)
        assert rep.ok
        back = assemble_from_split(rep.Q, trivial_subgroup(G), [(P3, trivial_subgroup(G)) for _, P3 in rep.normal_sylows])
        assert back.A.is_trivial() and back.ok

    def test_nilpotent(self):
        G = cyclic(12)
        rep = fitting_split(G, trivial_subgroup(G))
        assert rep.Q.is_trivial() and len(rep.pi_star) == 0
        assert sorted(p for p, _ in rep.normal_sylows) == [2, 3]
        assert rep.ok

    def test_requires_core_free(self, s3):
        with pytest.raises(HypothesisNotSatisfied):
            fitting_split(s3, sylow_subgroup(s3, 3))

    def test_not_solvable(self):
        G = alternating(5)
        with pytest.raises(NotSolvable):
            fitting_split(G, trivial_subgroup(G))

    @pytest.mark.parametrize("name", ["A4", "3^2:4", "5^2:3"])
    def test_nontrivial_components(self, name):
        G = {e.name: e.group for e in default_catalog(100)}[name]
        F = fitting_subgroup(G)
        found = False
        for A in all_subgroups(G):
            if A.order > 1 and A <= F and core_of_subgroup(G, A).is_trivial() and is_mt_stabilizer(G, A):
                rep = fitting_split(G, A)
                assert rep.ok
                comps = [(Pp, A & Pp) for _, Pp in rep.normal_sylows]
                assert any(not B.is_trivial() for _, B in comps)
                back = assemble_from_split(rep.Q, A & rep.Q, comps)
                assert back.A == A and back.ok
                found = True
        assert found


class TestSquareFree:
    def test_c6(self):
        G = cyclic(6)
        r = squarefree_analyze(G, trivial_subgroup(G))
        assert r.nilpotent_case and r.ok

    def test_s3_regular(self):
        G = regular(symmetric(3))
        r = squarefree_analyze(G, trivial_subgroup(G))
        assert r.fitting.order == 3 and r.coprime_ok and r.pi_star.primes == (2,)
        assert r.n_star == 2 and r.index_ok and r.actions_equivalent_ok and r.ok

    def test_not_squarefree(self, c4):
        with pytest.raises(HypothesisNotSatisfied):
            squarefree_analyze(c4, trivial_subgroup(c4))


class TestActionsEquivalent:
    def test_identity(self, s3):
        rec = coset_action(s3, subgroup(s3, [P("(1 2)", 3)]))
        rel = actions_equivalent(rec, rec)
        assert rel is not None
        for g in rec.image.generators:
            assert rel.phi(g) in rec.image

    def test_c4_vs_klein(self, c4, c2xc2):
        a = coset_action(c4, trivial_subgroup(c4))
        b = coset_action(c2xc2, trivial_subgroup(c2xc2))
        assert actions_equivalent(a, b) is None

    def test_conjugate_point_stabilizers(self, s3):
        a = coset_action(s3, subgroup(s3, [P("(1 2)", 3)]))
        b = coset_action(s3, subgroup(s3, [P("(1 3)", 3)]))
        rel = actions_equivalent(a, b)
        assert rel is not None
        assert {rel.phi(g) for g in a.image.elements} == set(b.image.elements)


class TestNormalQ:
    def test_s3_regular(self):
        G = regular(symmetric(3))
        N = sylow_subgroup(G, 3)
        r = normal_q_subgroup_check(G, trivial_subgroup(G), N)
        assert r.q == 3 and r.ok

    def test_q_squared(self, c4):
        N = [H for H in normal_subgroups(c4) if H.order == 2][0]
        with pytest.raises(HypothesisNotSatisfied):
            normal_q_subgroup_check(c4, trivial_subgroup(c4), N)


class TestClassifyPQ:
    def test_c15(self):
        c = classify_degree_pq(cyclic(15))
        assert (c.case, c.p, c.q) == ("cyclic_pq", 5, 3)

    def test_s3_regular_kopylova(self):
        c = classify_degree_pq(regular(symmetric(3)))
        assert c.case == "kopylova_order_qtp" and (c.p, c.q, c.exponent) == (3, 2, 1)

    def test_not_pq(self, c4):
        with pytest.raises(HypothesisNotSatisfied):
            classify_degree_pq(c4)

    def test_not_mt(self):
        G = direct_product(cyclic(3), cyclic(5))  # intransitive on 8 points
        with pytest.raises(HypothesisNotSatisfied):
            classify_degree_pq(G)


class TestPipeline:
    def test_nilpotent_empty(self):
        G = cyclic(12)
        tr = reduce_piq_pipeline(G, trivial_subgroup(G))
        assert tr.steps == [] and tr.terminal == "nilpotent" and tr.ok

    def test_degree_pq(self):
        G = regular(symmetric(3))
        tr = reduce_piq_pipeline(G, trivial_subgroup(G))
        assert [s.rule for s in tr.steps] == ["sk_classification"]
        assert tr.terminal == "suprunenko_kopylova"

    def test_s4_degree_12(self):
        G = symmetric(4)
        A = subgroup(G, [P("(1 2)(3 4)", 4)])
        tr = reduce_piq_pipeline(G, A)
        rules = [s.rule for s in tr.steps]
        assert "fitting_step" in rules and tr.ok
        for s in tr.steps:
            assert s.output["degree"] <= s.input["degree"]
            if s.rule == "quotient_by_core":
                assert s.output["group_order"] < s.input["group_order"]

    def test_bad_degree(self):
        G = cyclic(30)
        with pytest.raises(HypothesisNotSatisfied):
            reduce_piq_pipeline(G, trivial_subgroup(G))


class TestRestrict:
    def test_round_trip(self):
        G = symmetric(4)
        X = sylow_subgroup(G, 2)
        for H in all_subgroups(G):
            if H <= X:
                Hx = restrict(H, X)
                assert Hx.order == H.order
                assert set(Hx.elements) == set(H.elements)
        assert subgroup_group(X).order == 8


@pytest.mark.parametrize("entry", [e for e in default_catalog(60)], ids=lambda e: e.name)
def test_order_ideal_catalog(entry):
    assert order_ideal_check(entry.group)
