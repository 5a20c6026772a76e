import random

from mtgroups.catalog import abelian, cyclic, dihedral, symmetric
from mtgroups.perm_core import PermGroup, Permutation, conjugate, parse_permutation
from mtgroups.relabel import are_conjugate, find_conjugator, invariants


def relabel(G, b):
    return PermGroup([conjugate(g, b) for g in G.generators], G.degree)


def test_self():
    G = symmetric(4)
    b = find_conjugator(G, G)
    assert b is not None
    assert relabel(G, b) == G


def test_c4_vs_klein():
    assert find_conjugator(cyclic(4), dihedral(2)) is None


def test_same_invariants_not_conjugate():
    # <(1 2)(3 4)> and <(1 2)> differ in cycle type, so invariants already separate them
    a = PermGroup([parse_permutation("(1 2)(3 4)", 4)])
    b = PermGroup([parse_permutation("(1 2)", 4)])
    assert invariants(a) != invariants(b)
    assert not are_conjugate(a, b)


def test_random_relabelings():
    rng = random.Random(7)
    for G in [dihedral(6), abelian(2, 4), symmetric(3), cyclic(8)]:
        n = G.degree
        for _ in range(5):
            pts = list(range(n))
            rng.shuffle(pts)
            b = Permutation(pts)
            H = relabel(G, b)
            c = find_conjugator(G, H)
            assert c is not None
            assert relabel(G, c) == H


def test_intransitive_orbit_structure():
    a = PermGroup([parse_permutation("(1 2 3)", 6), parse_permutation("(4 5)", 6)])
    b = PermGroup([parse_permutation("(4 5 6)", 6), parse_permutation("(1 2)", 6)])
    c = find_conjugator(a, b)
    assert c is not None and relabel(a, c) == b


def test_isomorphic_but_not_conjugate():
    # C2 x C2 acting regularly vs. generated by two disjoint transpositions
    a = dihedral(2)
    b = PermGroup([parse_permutation("(1 2)", 4), parse_permutation("(3 4)", 4)])
    assert a.order == b.order == 4
    assert find_conjugator(a, b) is None
