"""Constructors for small permutation groups and the default test catalog."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

import numpy as np

from .errors import MtGroupsError
from .perm_core import PermGroup, Permutation, parse_permutation


def perm(text: str, degree: int) -> Permutation:
    return parse_permutation(text, degree)


def cyclic(n: int) -> PermGroup:
    if n == 1:
        return PermGroup([], 1)
    return PermGroup([Permutation([(i + 1) % n for i in range(n)])])


def symmetric(n: int) -> PermGroup:
    if n <= 1:
        return PermGroup([], 1)
    gens = [Permutation([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(Permutation([(i + 1) % n for i in range(n)]))
    return PermGroup(gens)


def alternating(n: int) -> PermGroup:
    if n <= 2:
        return PermGroup([], max(n, 1))
    gens = []
    for k in range(2, n):
        gens.append(Permutation.from_cycles([(0, 1, k)], n))
    return PermGroup(gens)


def dihedral(n: int) -> PermGroup:
    """Symmetries of the n-gon (order ``2n``); ``n = 2`` gives the Klein group on 4 points."""
    if n == 2:
        return PermGroup([perm("(1 2)(3 4)", 4), perm("(1 3)(2 4)", 4)])
    rot = Permutation([(i + 1) % n for i in range(n)])
    ref = Permutation([(-i) % n for i in range(n)])
    return PermGroup([rot, ref])


def direct_product(*groups: PermGroup) -> PermGroup:
    """Direct product acting on the disjoint union of the point sets."""
    total = sum(G.degree for G in groups)
    gens = []
    offset = 0
    for G in groups:
        for g in G.generators:
            images = list(range(total))
            for i, x in enumerate(g.images):
                images[offset + i] = offset + x
            gens.append(Permutation(images))
        offset += G.degree
    return PermGroup(gens, total)


def abelian(*orders: int) -> PermGroup:
    return direct_product(*(cyclic(n) for n in orders))


def regular_representation(G: PermGroup) -> PermGroup:
    """``G`` acting on itself by right multiplication."""
    mul = G.mul
    gens = [Permutation._trusted(tuple(mul[:, G.index_of(g)].tolist())) for g in G.generators]
    return PermGroup(gens, G.order)


def _matmul(a, b, p):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) % p for j in range(len(b[0])))
        for i in range(len(a))
    )


def affine(p: int, k: int, matrices) -> PermGroup:
    """``V ⋊ <matrices>`` acting on the ``p^k`` vectors of ``V = F_p^k``.

    Vectors are rows; matrix ``M`` acts by ``v -> v M``.
    """
    vecs = list(iproduct(range(p), repeat=k))
    index = {v: i for i, v in enumerate(vecs)}
    gens = []
    for e in range(k):
        unit = tuple(1 if j == e else 0 for j in range(k))
        gens.append(Permutation([index[tuple((v[j] + unit[j]) % p for j in range(k))] for v in vecs]))
    for M in matrices:
        img = [index[_matmul((v,), M, p)[0]] for v in vecs]
        if sorted(img) != list(range(len(vecs))):
            raise MtGroupsError("matrix not invertible")
        gens.append(Permutation(img))
    return PermGroup(gens, len(vecs))


def companion(coeffs: list[int], p: int):
    """Companion matrix of the monic polynomial ``x^k + c_{k-1} x^{k-1} + ... + c_0``.

    ``coeffs`` lists ``c_0, ..., c_{k-1}``.
    """
    k = len(coeffs)
    rows = []
    for i in range(k - 1):
        rows.append(tuple(1 if j == i + 1 else 0 for j in range(k)))
    rows.append(tuple((-c) % p for c in coeffs))
    return tuple(rows)


def _extend_to_map(N: PermGroup, images: list[int]) -> np.ndarray | None:
    """Extend generator images to a map on element indices along the Cayley
    graph; ``None`` if inconsistent (not a homomorphism) or not bijective."""
    mul = N.mul
    gidx = [N.index_of(g) for g in N.generators]
    phi = np.full(N.order, -1, dtype=np.int64)
    phi[0] = 0
    queue = [0]
    while queue:
        x = queue.pop()
        for g, im in zip(gidx, images):
            y = mul[x, g]
            val = mul[phi[x], im]
            if phi[y] < 0:
                phi[y] = val
                queue.append(y)
            elif phi[y] != val:
                return None
    if len(set(phi.tolist())) != N.order:
        return None
    return phi


def semidirect_product(N: PermGroup, H: PermGroup, action: list[list[Permutation]]) -> PermGroup:
    """``N ⋊ H`` in its regular representation.

    ``action[i][j]`` is the image of ``N.generators[j]`` under conjugation
    by ``H.generators[i]`` (``n -> h^-1 n h``). The images are validated as
    automorphisms and the assignment as a homomorphism ``H -> Aut(N)``.
    """
    auts = []
    for imgs in action:
        phi = _extend_to_map(N, [N.index_of(x) for x in imgs])
        if phi is None:
            raise MtGroupsError("generator images do not define an automorphism")
        auts.append(phi)
    # phi_h for every h, composing left to right (a right action)
    hmul = H.mul
    hg = [H.index_of(h) for h in H.generators]
    table = [None] * H.order
    table[0] = np.arange(N.order)
    queue = [0]
    while queue:
        x = queue.pop()
        for g, phi in zip(hg, auts):
            y = hmul[x, g]
            val = phi[table[x]]
            if table[y] is None:
                table[y] = val
                queue.append(y)
            elif not np.array_equal(table[y], val):
                raise MtGroupsError("action is not a homomorphism into Aut(N)")
    hinv = H.inv
    nmul = N.mul
    nn, nh = N.order, H.order
    # element (a, b) stands for n_a h_b; point index a * nh + b
    a = np.repeat(np.arange(nn), nh)
    b = np.tile(np.arange(nh), nn)
    gens = []
    for g in N.generators:
        # n h n' = n (n')^(h^-1) h
        gi = N.index_of(g)
        conj = np.array([table[hinv[j]][gi] for j in range(nh)])
        na = nmul[a, conj[b]]
        gens.append(Permutation._trusted(tuple((na * nh + b).tolist())))
    for h in H.generators:
        hi = H.index_of(h)
        gens.append(Permutation._trusted(tuple((a * nh + hmul[b, hi]).tolist())))
    return PermGroup(gens, nn * nh)


@dataclass
class CatalogEntry:
    name: str
    group: PermGroup
    tags: frozenset = field(default_factory=frozenset)

    @property
    def order(self) -> int:
        return self.group.order


def quaternion8() -> PermGroup:
    return PermGroup([perm("(1 2 4 7)(3 6 8 5)", 8), perm("(1 3 4 8)(2 5 7 6)", 8)])


def sl23() -> PermGroup:
    """SL(2,3) acting on the 8 non-zero vectors of F_3^2."""
    vecs = [v for v in iproduct(range(3), repeat=2) if v != (0, 0)]
    index = {v: i for i, v in enumerate(vecs)}
    gens = []
    for M in (((1, 1), (0, 1)), ((1, 0), (1, 1))):
        gens.append(Permutation([index[_matmul((v,), M, 3)[0]] for v in vecs]))
    return PermGroup(gens)


def gl23() -> PermGroup:
    """GL(2,3) acting on the 8 non-zero vectors of F_3^2."""
    vecs = [v for v in iproduct(range(3), repeat=2) if v != (0, 0)]
    index = {v: i for i, v in enumerate(vecs)}
    gens = []
    for M in (((1, 1), (0, 1)), ((1, 0), (1, 1)), ((2, 0), (0, 1))):
        gens.append(Permutation([index[_matmul((v,), M, 3)[0]] for v in vecs]))
    return PermGroup(gens)


def psl27() -> PermGroup:
    return PermGroup([perm("(1 2 3 4 5 6 7)", 7), perm("(2 3 5)(4 7 6)", 7), perm("(1 2)(3 6)", 7)])


def dicyclic12() -> PermGroup:
    """C3 ⋊ C4 with the generator of C4 inverting C3."""
    C3, C4 = cyclic(3), cyclic(4)
    g = C3.generators[0]
    return semidirect_product(C3, C4, [[g.inverse()]])


def frobenius(p: int, k: int) -> PermGroup:
    """``C_p ⋊ C_k`` acting on ``p`` points, for ``k | p - 1``."""
    from .structure import prime_factors

    # a primitive root mod p
    for r in range(2, p):
        if all(pow(r, (p - 1) // q, p) != 1 for q in prime_factors(p - 1)):
            break
    else:
        r = 1
    w = pow(r, (p - 1) // k, p)
    return PermGroup([Permutation([(i + 1) % p for i in range(p)]), Permutation([(i * w) % p for i in range(p)])])


def suprunenko_75() -> PermGroup:
    """``(C5 x C5) ⋊ C3`` with ``C3`` irreducible on ``F_5^2``."""
    return affine(5, 2, [companion([1, 1], 5)])


def suprunenko_405() -> PermGroup:
    """``(C3)^4 ⋊ C5`` with ``C5`` irreducible on ``F_3^4``."""
    return affine(3, 4, [companion([1, 1, 1, 1], 3)])


def faithful_action(G: PermGroup, degree: int) -> PermGroup:
    """Faithful action of ``G`` on the cosets of its first core-free subgroup of index ``degree``."""
    from .structure import all_subgroups, core_of_subgroup, coset_action

    if G.order % degree:
        raise MtGroupsError(f"no subgroup of index {degree}")
    for A in all_subgroups(G):
        if A.order * degree == G.order and core_of_subgroup(G, A).is_trivial():
            return coset_action(G, A).image
    raise MtGroupsError(f"no core-free subgroup of index {degree}")


def _build(spec) -> list[CatalogEntry]:
    out = []
    for name, fn, tags in spec:
        out.append(CatalogEntry(name, fn(), frozenset(tags)))
    return out


SMALL = [
    ("C1", lambda: cyclic(1), ()),
    ("C2", lambda: cyclic(2), ()),
    ("C3", lambda: cyclic(3), ()),
    ("C4", lambda: cyclic(4), ()),
    ("C2xC2", lambda: abelian(2, 2), ()),
    ("C5", lambda: cyclic(5), ()),
    ("C6", lambda: cyclic(6), ()),
    ("S3", lambda: symmetric(3), ()),
    ("C7", lambda: cyclic(7), ()),
    ("C8", lambda: cyclic(8), ()),
    ("C4xC2", lambda: abelian(4, 2), ()),
    ("C2^3", lambda: abelian(2, 2, 2), ()),
    ("D4", lambda: dihedral(4), ()),
    ("Q8", quaternion8, ()),
    ("C9", lambda: cyclic(9), ()),
    ("C3xC3", lambda: abelian(3, 3), ()),
    ("C10", lambda: cyclic(10), ()),
    ("D5", lambda: dihedral(5), ()),
    ("C12", lambda: cyclic(12), ()),
    ("C6xC2", lambda: abelian(6, 2), ()),
    ("D6", lambda: dihedral(6), ()),
    ("A4", lambda: alternating(4), ()),
    ("C3:C4", dicyclic12, ()),
    ("C14", lambda: cyclic(14), ()),
    ("D7", lambda: dihedral(7), ()),
    ("C15", lambda: cyclic(15), ()),
    ("C16", lambda: cyclic(16), ()),
    ("C4xC4", lambda: abelian(4, 4), ()),
    ("C2^4", lambda: abelian(2, 2, 2, 2), ()),
    ("D8", lambda: dihedral(8), ()),
    ("D4xC2", lambda: direct_product(dihedral(4), cyclic(2)), ()),
    ("Q8xC2", lambda: direct_product(quaternion8(), cyclic(2)), ()),
    ("C18", lambda: cyclic(18), ()),
    ("S3xC3", lambda: direct_product(symmetric(3), cyclic(3)), ()),
    ("(C3xC3):C2", lambda: affine(3, 2, [((2, 0), (0, 2))]), ()),
    ("D9", lambda: dihedral(9), ()),
    ("C20", lambda: cyclic(20), ()),
    ("F20", lambda: frobenius(5, 4), ()),
    ("C5:C4", lambda: semidirect_product(cyclic(5), cyclic(4), [[perm("(1 5 4 3 2)", 5)]]), ()),
    ("D10", lambda: dihedral(10), ()),
    ("C7:C3", lambda: frobenius(7, 3), ()),
    ("C21", lambda: cyclic(21), ()),
    ("C24", lambda: cyclic(24), ()),
    ("S4", lambda: symmetric(4), ()),
    ("SL(2,3)", sl23, ()),
    ("A4xC2", lambda: direct_product(alternating(4), cyclic(2)), ()),
    ("D12", lambda: dihedral(12), ()),
    ("S3xC4", lambda: direct_product(symmetric(3), cyclic(4)), ()),
    ("C3:C8", lambda: semidirect_product(cyclic(3), cyclic(8), [[perm("(1 3 2)", 3)]]), ()),
]

MEDIUM = [
    ("C3^3", lambda: abelian(3, 3, 3), ()),
    ("C3xC9", lambda: abelian(3, 9), ()),
    ("3^2:4", lambda: affine(3, 2, [((0, 1), (2, 0))]), ()),
    ("S3xS3", lambda: direct_product(symmetric(3), symmetric(3)), ()),
    ("F42", lambda: frobenius(7, 6), ()),
    ("S4xC2", lambda: direct_product(symmetric(4), cyclic(2)), ()),
    ("2^3:7", lambda: affine(2, 3, [companion([1, 1, 0], 2)]), ()),
    ("A5", lambda: alternating(5), ()),
    ("A4xC3", lambda: direct_product(alternating(4), cyclic(3)), ()),
    ("AGL(1,9)", lambda: affine(3, 2, [((0, 1), (1, 1))]), ()),
    ("5^2:3", suprunenko_75, ("suprunenko",)),
    ("S3xD5", lambda: direct_product(symmetric(3), dihedral(5)), ()),
    ("S5", lambda: symmetric(5), ()),
    ("A4xS3", lambda: direct_product(alternating(4), symmetric(3)), ()),
    ("PSL(2,7)", psl27, ()),
    ("GL(2,3)", gl23, ()),
    ("D4xS3", lambda: direct_product(dihedral(4), symmetric(3)), ()),
    ("S4xC3", lambda: direct_product(symmetric(4), cyclic(3)), ()),
    ("2^4:5", lambda: affine(2, 4, [companion([1, 1, 1, 1], 2)]), ()),
    ("C2^5", lambda: abelian(2, 2, 2, 2, 2), ()),
    ("D4xC4", lambda: direct_product(dihedral(4), cyclic(4)), ()),
    ("A4xC2xC2", lambda: direct_product(alternating(4), cyclic(2), cyclic(2)), ()),
    ("D4xD4", lambda: direct_product(dihedral(4), dihedral(4)), ()),
    ("S3xS3xC2", lambda: direct_product(symmetric(3), symmetric(3), cyclic(2)), ()),
    ("C3^4", lambda: abelian(3, 3, 3, 3), ()),
    ("5^2:4", lambda: affine(5, 2, [((2, 0), (0, 3))]), ()),
    ("S4xC2xC2", lambda: direct_product(symmetric(4), cyclic(2), cyclic(2)), ()),
    ("C7:C3xS3", lambda: direct_product(frobenius(7, 3), symmetric(3)), ()),
    ("S4xS3", lambda: direct_product(symmetric(4), symmetric(3)), ()),
    ("A4xA4", lambda: direct_product(alternating(4), alternating(4)), ()),
    ("2^3:7:3", lambda: affine(2, 3, [companion([1, 1, 0], 2), ((1, 0, 0), (0, 0, 1), (0, 1, 1))]), ()),
]

LARGE = [
    ("3^4:5", suprunenko_405, ("suprunenko",)),
]


def default_catalog(max_order: int = 200) -> list[CatalogEntry]:
    """Deterministic catalog of groups of order at most ``max_order``."""
    out = [e for e in _build(SMALL + MEDIUM + LARGE) if e.order <= max_order]
    return sorted(out, key=lambda e: (e.order, e.name))


def small_catalog(max_order: int = 24) -> list[CatalogEntry]:
    return [e for e in _build(SMALL) if e.order <= max_order]
