"""Minimally transitive actions: mt-stabilizer tests, reductions, splittings.

A subgroup ``A`` of ``G`` is an *mt-stabilizer* when ``G`` acts minimally
transitively (modulo the kernel) on the right cosets ``G:A``: every subgroup
``H`` with ``core(A) <= H < G`` is intransitive on ``G:A``. ``H`` is
transitive on ``G:A`` exactly when ``AH = G``.

Check functions return records whose boolean ``*_ok`` fields say whether the
instance is consistent with the corresponding statement; instances outside
the hypotheses raise :class:`HypothesisNotSatisfied`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, prod

import numpy as np

from . import kernels
from .errors import HypothesisNotSatisfied, NotSolvable, TheoremViolation
from .perm_core import PermGroup, Permutation, orbits
from .relabel import find_conjugator
from .structure import (
    CosetActionRecord,
    PrimeSet,
    SubgroupHandle,
    all_subgroups,
    conjugate_subgroup,
    core_of_subgroup,
    coset_action,
    fitting_subgroup,
    frattini_subgroup,
    group_predicates,
    hall_subgroup,
    is_normal,
    is_p_group,
    is_prime,
    join,
    mask_from_members,
    maximal_subgroups,
    multiplicative_order,
    normal_subgroups,
    normalizer,
    p_exponent,
    p_part,
    prime_factors,
    product_is_whole,
    quotient_group,
    sylow_subgroup,
    trivial_subgroup,
    whole_group,
)

MT_METHODS = ("definitional", "product", "maximal")


@dataclass
class MtVerdict:
    holds: bool
    witness: SubgroupHandle | None = None
    method: str = "maximal"

    def __bool__(self) -> bool:
        return self.holds


# -- sub-groups as stand-alone groups ---------------------------------------

def subgroup_group(H: SubgroupHandle) -> PermGroup:
    """``H`` as its own :class:`PermGroup`, cached on the parent."""
    cache = H.parent.cache.setdefault("subgroup_group", {})
    X = cache.get(H.mask)
    if X is None:
        X = H.as_group()
        cache[H.mask] = X
    return X


def restrict(H: SubgroupHandle, X: SubgroupHandle) -> SubgroupHandle:
    """Re-express ``H <= X`` as a subgroup of ``subgroup_group(X)``."""
    if not H <= X:
        raise ValueError("subgroup not contained in the ambient subgroup")
    Xg = subgroup_group(X)
    # X's sorted indices are exactly the sorted element order of Xg
    local = np.searchsorted(X.indices, H.indices)
    m = np.zeros(Xg.order, dtype=np.uint8)
    m[local] = 1
    return SubgroupHandle(Xg, mask_from_members(m))


def lift(Hx: SubgroupHandle, X: SubgroupHandle) -> SubgroupHandle:
    """Inverse of :func:`restrict`."""
    G = X.parent
    m = np.zeros(G.order, dtype=np.uint8)
    m[X.indices[Hx.indices]] = 1
    return SubgroupHandle(G, mask_from_members(m))


# -- mt-stabilizer tests ----------------------------------------------------

def _mt_definitional(G: PermGroup, A: SubgroupHandle) -> MtVerdict:
    K = core_of_subgroup(G, A)
    rec = coset_action(G, A)
    for H in all_subgroups(G):
        if H.is_whole() or not K <= H:
            continue
        if kernels.distinct_count(rec.labels, H.indices, rec.degree) == rec.degree:
            return MtVerdict(False, H, "definitional")
    return MtVerdict(True, None, "definitional")


def _mt_product(G: PermGroup, A: SubgroupHandle) -> MtVerdict:
    K = core_of_subgroup(G, A)
    for H in all_subgroups(G):
        if product_is_whole(A, H) and not product_is_whole(H, K):
            return MtVerdict(False, join(H, K), "product")
    return MtVerdict(True, None, "product")


def _mt_maximal(G: PermGroup, A: SubgroupHandle) -> MtVerdict:
    # transitivity is inherited by overgroups, so maximal subgroups suffice
    K = core_of_subgroup(G, A)
    for M in maximal_subgroups(G):
        if K <= M and product_is_whole(A, M):
            return MtVerdict(False, M, "maximal")
    return MtVerdict(True, None, "maximal")


_MT_IMPL = {"definitional": _mt_definitional, "product": _mt_product, "maximal": _mt_maximal}


def is_mt_stabilizer(G: PermGroup, A: SubgroupHandle, method: str = "maximal") -> MtVerdict:
    """Decide whether ``A`` is an mt-stabilizer of ``G``.

    ``method`` is one of ``definitional`` (scan subgroups over the core for
    transitivity on the coset table), ``product`` (``AH = G`` forces
    ``HK = G``), ``maximal`` (maximal subgroups over the core are
    intransitive), or ``all``, which runs the three and raises
    :class:`TheoremViolation` if they disagree.
    """
    if A.parent is not G:
        raise ValueError("subgroup belongs to a different group")
    cache = G.cache.setdefault("mt", {})
    key = (A.mask, method)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if method == "all":
        verdicts = [is_mt_stabilizer(G, A, m) for m in MT_METHODS]
        if len({v.holds for v in verdicts}) != 1:
            raise TheoremViolation(
                "mt_criteria",
                "mt-stabilizer criteria disagree: "
                + ", ".join(f"{v.method}={v.holds}" for v in verdicts),
                counterexample=counterexample(G, A=A),
            )
        verdict = verdicts[0]
    else:
        try:
            impl = _MT_IMPL[method]
        except KeyError:
            raise ValueError(f"unknown method {method!r}") from None
        verdict = impl(G, A)
    if verdict.witness is not None:
        W, K = verdict.witness, core_of_subgroup(G, A)
        assert product_is_whole(A, W) and not product_is_whole(W, K)
    cache[key] = verdict
    return verdict


def point_stabilizer(G: PermGroup, point: int = 0) -> SubgroupHandle:
    return SubgroupHandle(G, mask_from_members(G.array[:, point] == point))


def find_transitive_proper_subgroup(G: PermGroup) -> list[Permutation] | None:
    """Generators of a transitive proper subgroup of ``G``, or ``None``.

    Works on permutations only (no lattice). A subgroup is transitive iff
    its orbit of point 0 is everything; starting from the trivial group, pick
    the least point ``j`` outside that orbit and branch over every element
    of ``G`` mapping 0 to ``j``. Any transitive proper subgroup ``T`` stays
    reachable, since some branch element always lies in ``T``.
    """
    from .perm_core import orbit_of

    n, order = G.degree, G.order
    if not G.is_transitive():
        raise HypothesisNotSatisfied("group not transitive")
    if order == n:
        return None  # regular: a transitive subgroup has order >= n
    rows = G.array
    by_image: dict[int, list[int]] = {}
    for i, r in enumerate(rows[:, 0].tolist()):
        by_image.setdefault(r, []).append(i)
    seen: set[bytes] = set()

    def visit(gens: list[int]) -> list[int] | None:
        orb = orbit_of(0, [rows[g] for g in gens])
        if len(orb) == n:
            return gens
        j = min(set(range(n)) - orb)
        for x in by_image[j]:
            cand = gens + [x]
            closure = kernels.perm_closure(rows[cand], n, order - 1)
            if closure is None:
                continue  # generates G
            key = np.sort(kernels.lehmer_ranks(closure)).tobytes() if n <= 20 else closure[np.lexsort(closure.T[::-1])].tobytes()
            if key in seen:
                continue
            seen.add(key)
            found = visit(cand)
            if found is not None:
                return found
        return None

    found = visit([])
    if found is None:
        return None
    return [G.elements[g] for g in found]


def is_minimally_transitive(G: PermGroup, method: str = "auto") -> MtVerdict:
    """Is ``G`` transitive with every proper subgroup intransitive?

    ``method='lattice'`` scans maximal subgroups; ``'search'`` uses
    :func:`find_transitive_proper_subgroup`; ``'auto'`` picks the lattice
    when the group is small enough and cross-checks against the stabilizer
    formulation.
    """
    if not G.is_transitive():
        raise HypothesisNotSatisfied("group not transitive", f"degree {G.degree}")
    from .structure import lattice_bound

    if method == "auto":
        method = "lattice" if G.order <= lattice_bound() else "search"
    if method == "search":
        gens = find_transitive_proper_subgroup(G)
        if gens is None:
            return MtVerdict(True, None, "search")
        from .structure import subgroup

        return MtVerdict(False, subgroup(G, gens), "search")
    witness = None
    for M in maximal_subgroups(G):
        if M.order >= G.degree and orbits(M.generators, G.degree).is_transitive:
            witness = M
            break
    verdict = MtVerdict(witness is None, witness, "lattice")
    stab = point_stabilizer(G)
    if core_of_subgroup(G, stab).is_trivial():
        other = is_mt_stabilizer(G, stab)
        if other.holds != verdict.holds:
            raise TheoremViolation("mt_criteria", "point-set and coset formulations disagree",
                                   counterexample=counterexample(G))
    return verdict


# -- quasi-primitivity -------------------------------------------------------

@dataclass
class QuasiprimitiveReport:
    quasiprimitive: bool
    is_mt: bool
    quotient_simple: bool
    simple_quotient_ok: bool

    @property
    def ok(self) -> bool:
        return self.simple_quotient_ok


def quotient_predicates(G: PermGroup, N: SubgroupHandle):
    cache = G.cache.setdefault("quotient_predicates", {})
    hit = cache.get(N.mask)
    if hit is None:
        hit = group_predicates(quotient_group(G, N).group)
        cache[N.mask] = hit
    return hit


def quasiprimitive_and_simple_check(G: PermGroup, A: SubgroupHandle) -> QuasiprimitiveReport:
    """Quasi-primitivity of ``G`` on ``G:A`` and the simplicity consequence.

    Quasi-primitive: every normal subgroup properly containing the kernel is
    transitive. A quasi-primitive minimally transitive action must have a
    simple image ``G/K``.
    """
    if A.is_whole():
        raise HypothesisNotSatisfied("trivial action", "A = G gives a one-point action")
    K = core_of_subgroup(G, A)
    qp = all(product_is_whole(A, N) for N in normal_subgroups(G) if K < N)
    mt = is_mt_stabilizer(G, A).holds
    simple = quotient_predicates(G, K).is_simple
    return QuasiprimitiveReport(qp, mt, simple, (not qp) or (not mt) or simple)


# -- descent to subgroups ---------------------------------------------------

@dataclass
class DescentReport:
    case: str
    witness_H: SubgroupHandle | None = None
    cores_differ_ok: bool = True
    bk_mt_ok: bool = True
    witness_ok: bool = True
    special_case_ok: bool = True

    @property
    def ok(self) -> bool:
        return self.cores_differ_ok and self.bk_mt_ok and self.witness_ok and self.special_case_ok


def subgroup_descent_analyze(G: PermGroup, A: SubgroupHandle, B: SubgroupHandle) -> DescentReport:
    """For ``A`` mt and ``B <= A``: either ``B`` is mt (case a), or (case b)
    the cores differ, ``B core(A)`` is mt, and some ``H`` has
    ``H core(A) = G != H core(B)``.
    """
    if not B <= A:
        raise HypothesisNotSatisfied("B not contained in A")
    if not is_mt_stabilizer(G, A):
        raise HypothesisNotSatisfied("A not an mt-stabilizer")
    KA = core_of_subgroup(G, A)
    KB = core_of_subgroup(G, B)
    vb = is_mt_stabilizer(G, B)
    if vb.holds:
        return DescentReport("a")
    rep = DescentReport("b")
    rep.special_case_ok = not (KA <= B)
    rep.cores_differ_ok = KA.mask != KB.mask
    rep.bk_mt_ok = is_mt_stabilizer(G, join(B, KA)).holds
    H = vb.witness
    rep.witness_H = H
    rep.witness_ok = product_is_whole(H, KA) and not product_is_whole(H, KB)
    return rep


def mt_stabilizers(G: PermGroup, core_free: bool = False) -> list[SubgroupHandle]:
    out = []
    for A in all_subgroups(G):
        if core_free and not core_of_subgroup(G, A).is_trivial():
            continue
        if is_mt_stabilizer(G, A):
            out.append(A)
    return out


def order_ideal_check(G: PermGroup) -> bool:
    """Are the core-free mt-stabilizers closed under taking subgroups?"""
    good = {A.mask for A in mt_stabilizers(G, core_free=True)}
    subs = all_subgroups(G)
    for am in good:
        for B in subs:
            if B.mask & ~am == 0 and B.mask not in good:
                return False
    return True


# -- reduction by a normal subgroup -----------------------------------------

@dataclass
class Relabeling:
    """``beta`` maps points of X to points of Y; ``phi(x) = beta^-1 x beta``."""

    beta: Permutation

    def phi(self, x: Permutation) -> Permutation:
        b = self.beta
        return b.inverse() * x * b


def _image(X) -> PermGroup:
    if isinstance(X, PermGroup):
        return X
    return X.image


def actions_equivalent(X, Y) -> Relabeling | None:
    """Permutational equivalence of two actions (via their image groups)."""
    GX, GY = _image(X), _image(Y)
    if GX.degree != GY.degree:
        return None
    b = find_conjugator(GX, GY)
    return None if b is None else Relabeling(b)


@dataclass
class OrbitQuotientAction:
    """``G`` acting on the orbits of a normal subgroup on ``G:A``."""

    blocks: tuple[tuple[int, ...], ...]
    images: np.ndarray
    image: PermGroup

    @property
    def degree(self) -> int:
        return len(self.blocks)


def orbit_quotient_action(rec: CosetActionRecord, H: SubgroupHandle) -> OrbitQuotientAction:
    G = rec.source
    system = orbits([rec.images[h] for h in H.gens], rec.degree)
    block_of = np.array(system.block_of(), dtype=np.int32)
    firsts = np.array([b[0] for b in system.blocks], dtype=np.int32)
    images = block_of[rec.images[:, firsts]]
    uniq = np.unique(images, axis=0)
    gens = [Permutation._trusted(tuple(images[G.index_of(g)].tolist())) for g in G.generators]
    return OrbitQuotientAction(system.blocks, images, PermGroup.from_elements(uniq, len(firsts), gens))


@dataclass
class NormalReduction:
    B: SubgroupHandle
    orbit_action: CosetActionRecord
    blocks: OrbitQuotientAction
    mt_ok: bool
    strictly_larger_ok: bool
    block_stabilizer_ok: bool
    relabeling: Relabeling | None
    blocks_mt_ok: bool

    @property
    def equivalent_ok(self) -> bool:
        return self.relabeling is not None

    @property
    def ok(self) -> bool:
        return (self.mt_ok and self.strictly_larger_ok and self.block_stabilizer_ok
                and self.equivalent_ok and self.blocks_mt_ok)


def reduce_by_normal(G: PermGroup, A: SubgroupHandle, H: SubgroupHandle) -> NormalReduction:
    """Pass from ``G:A`` to ``G:AH`` for a normal ``H`` strictly between the core and ``G``.

    ``AH`` is the set-stabilizer of the ``H``-orbit through the coset ``A``;
    the orbit action must be minimally transitive and equivalent to the
    coset action on ``G:AH``.
    """
    if not is_mt_stabilizer(G, A):
        raise HypothesisNotSatisfied("A not an mt-stabilizer")
    if not is_normal(H):
        raise HypothesisNotSatisfied("H not normal")
    K = core_of_subgroup(G, A)
    if not (K < H and not H.is_whole()):
        raise HypothesisNotSatisfied("need core < H < G")
    B = join(A, H)
    rec = coset_action(G, A)
    blocks = orbit_quotient_action(rec, H)
    orbit_rec = coset_action(G, B)
    # block 0 holds coset point 0; its set-stabilizer must be AH
    stab = SubgroupHandle(G, mask_from_members(blocks.images[:, 0] == 0))
    relabeling = actions_equivalent(blocks.image, orbit_rec)
    return NormalReduction(
        B=B,
        orbit_action=orbit_rec,
        blocks=blocks,
        mt_ok=is_mt_stabilizer(G, B).holds,
        strictly_larger_ok=B.mask != A.mask,
        block_stabilizer_ok=stab.mask == B.mask,
        relabeling=relabeling,
        blocks_mt_ok=is_minimally_transitive(blocks.image).holds,
    )


@dataclass
class QuotientTransfer:
    mt_in_quotient: bool
    mt_in_G: bool

    @property
    def biconditional_ok(self) -> bool:
        return self.mt_in_quotient == self.mt_in_G

    ok = biconditional_ok


def quotient_transfer(G: PermGroup, N: SubgroupHandle, A: SubgroupHandle) -> QuotientTransfer:
    """Compare ``A`` mt in ``G`` with ``A/N`` mt in ``G/N`` for normal ``N <= A``."""
    if not N <= A:
        raise HypothesisNotSatisfied("N not contained in A")
    Q = quotient_group(G, N)
    Abar = Q.project(A)
    return QuotientTransfer(
        mt_in_quotient=is_mt_stabilizer(Q.group, Abar).holds,
        mt_in_G=is_mt_stabilizer(G, A).holds,
    )


# -- prime sets and the Frattini subgroup -----------------------------------

@dataclass
class PrimeFrattiniReport:
    is_mt: bool
    quotient_solvable: bool
    quotient_nilpotent: bool
    in_frattini: bool
    index_prime_power: bool
    part_i_ok: bool
    part_ii_forward_ok: bool
    part_ii_converse_ok: bool
    part_iii_ok: bool

    @property
    def ok(self) -> bool:
        return self.part_i_ok and self.part_ii_forward_ok and self.part_ii_converse_ok and self.part_iii_ok


def prime_frattini_check(G: PermGroup, A: SubgroupHandle) -> PrimeFrattiniReport:
    """Prime sets, Frattini containment and prime-power degree on ``G:A``.

    (i) solvable ``G/K`` and mt: ``pi(|G:A|) = pi(|G/K|)``;
    (ii) ``A/K <= Phi(G/K)`` forces mt, and for nilpotent ``G/K`` mt forces it;
    (iii) mt of prime-power index ``p^i``: ``G/K`` is a ``p``-group and
    ``A/K <= Phi(G/K)``.
    """
    K = core_of_subgroup(G, A)
    Q = quotient_group(G, K)
    qpred = group_predicates(Q.group)
    mt = is_mt_stabilizer(G, A).holds
    index = G.order // A.order
    in_phi = Q.project(A) <= frattini_subgroup(Q.group)
    part_i = not (qpred.is_solvable and mt) or PrimeSet.of(index) == PrimeSet.of(Q.group.order)
    part_ii_f = not in_phi or mt
    part_ii_c = not (qpred.is_nilpotent and mt) or in_phi
    pp = is_p_group(index)
    if mt and pp:
        p_set = set(prime_factors(index))
        part_iii = set(prime_factors(Q.group.order)) <= p_set and in_phi
    else:
        part_iii = True
    return PrimeFrattiniReport(mt, qpred.is_solvable, qpred.is_nilpotent, in_phi, pp,
                               part_i, part_ii_f, part_ii_c, part_iii)


# -- splitting over normal Sylow subgroups ----------------------------------

def normal_sylow_subgroups(G: PermGroup) -> list[tuple[int, SubgroupHandle]]:
    out = []
    for p in prime_factors(G.order):
        P = sylow_subgroup(G, p)
        if is_normal(P):
            out.append((p, P))
    return out


def conjugates(H: SubgroupHandle, limit: int | None = None) -> list[SubgroupHandle]:
    """Distinct conjugates of ``H`` (deterministic order; ``limit`` samples)."""
    G = H.parent
    N = normalizer(H)
    _, reps = kernels.coset_labels(G.mul, N.indices)
    reps = reps.tolist()
    if limit is not None and len(reps) > limit:
        step = len(reps) / limit
        reps = [reps[int(i * step)] for i in range(limit)]
    return [conjugate_subgroup(H, g) for g in reps]


FULL_CONJUGATE_ORDER = 200
SAMPLED_CONJUGATES = 8


def _component_check(G: PermGroup, Qs: SubgroupHandle, P: SubgroupHandle, stab: SubgroupHandle):
    QP = join(Qs, P)
    X = subgroup_group(QP)
    local = restrict(stab, QP)
    mt = is_mt_stabilizer(X, local).holds
    cf = core_of_subgroup(X, local).is_trivial()
    return QP, mt, cf


@dataclass
class SplitComponent:
    prime: int
    Q_conjugate: SubgroupHandle
    subgroup: SubgroupHandle
    stabilizer: SubgroupHandle
    mt_ok: bool
    corefree_ok: bool


@dataclass
class SplitReport:
    pi_star: PrimeSet
    fitting: SubgroupHandle
    Q: SubgroupHandle
    normal_sylows: list[tuple[int, SubgroupHandle]]
    components: list[SplitComponent]
    primes_ok: bool
    conjugates_checked: int

    @property
    def ok(self) -> bool:
        return self.primes_ok and all(c.mt_ok and c.corefree_ok for c in self.components)


def _split_setup(G: PermGroup):
    if not group_predicates(G).is_solvable:
        raise NotSolvable()
    F = fitting_subgroup(G)
    pi_star = PrimeSet.of(G.order // F.order)
    Q = hall_subgroup(G, pi_star)
    sylows = normal_sylow_subgroups(G)
    if not sylows:
        raise HypothesisNotSatisfied("no normal Sylow subgroup")
    limit = None if G.order <= FULL_CONJUGATE_ORDER else SAMPLED_CONJUGATES
    return F, pi_star, Q, sylows, conjugates(Q, limit)


def fitting_split(G: PermGroup, A: SubgroupHandle) -> SplitReport:
    """Split a core-free mt-stabilizer inside the Fitting subgroup along the
    normal Sylow subgroups: each ``(A cap Q) x (A cap P)`` must be a
    core-free mt-stabilizer of ``Q* P`` for every conjugate ``Q*`` of the
    Hall ``pi(G:F)``-subgroup ``Q``.
    """
    F, pi_star, Q, sylows, Qconj = _split_setup(G)
    if not core_of_subgroup(G, A).is_trivial():
        raise HypothesisNotSatisfied("A not core-free")
    if not A <= F:
        raise HypothesisNotSatisfied("A not inside the Fitting subgroup")
    if not is_mt_stabilizer(G, A):
        raise HypothesisNotSatisfied("A not an mt-stabilizer")
    AQ = A & Q
    comps = []
    for p, P in sylows:
        stab = join(AQ, A & P)
        for Qs in Qconj:
            QP, mt, cf = _component_check(G, Qs, P, stab)
            comps.append(SplitComponent(p, Qs, QP, stab, mt, cf))
    primes_ok = all(p not in pi_star for p, _ in sylows)
    return SplitReport(pi_star, F, Q, sylows, comps, primes_ok, len(Qconj))


@dataclass
class AssembleReport:
    A: SubgroupHandle
    mt_ok: bool
    corefree_ok: bool

    @property
    def ok(self) -> bool:
        return self.mt_ok and self.corefree_ok


def assemble_from_split(
    Q: SubgroupHandle,
    A_Q: SubgroupHandle,
    sylow_components: list[tuple[SubgroupHandle, SubgroupHandle]],
) -> AssembleReport:
    """Reassemble ``A = A_Q x A_P1 x ... x A_Pt`` and check it is a core-free
    mt-stabilizer of the parent group, after verifying every component
    hypothesis over all conjugates of ``Q``.
    """
    G = Q.parent
    F, pi_star, Q0, sylows, Qconj = _split_setup(G)
    if Q.order != Q0.order:
        raise HypothesisNotSatisfied("Q is not a Hall pi(G:F)-subgroup")
    if sorted(P.mask for P, _ in sylow_components) != sorted(P.mask for _, P in sylows):
        raise HypothesisNotSatisfied("components must be exactly the normal Sylow subgroups")
    if not A_Q <= (F & Q):
        raise HypothesisNotSatisfied("A_Q not inside F cap Q")
    if Q.mask != Q0.mask:
        Qconj = conjugates(Q, None if G.order <= FULL_CONJUGATE_ORDER else SAMPLED_CONJUGATES)
    A = A_Q
    for P, AP in sylow_components:
        if not AP <= P:
            raise HypothesisNotSatisfied("A_P not inside P")
        stab = join(A_Q, AP)
        for Qs in Qconj:
            _, mt, cf = _component_check(G, Qs, P, stab)
            if not (mt and cf):
                raise HypothesisNotSatisfied("component not a core-free mt-stabilizer")
        A = join(A, AP)
    return AssembleReport(A, is_mt_stabilizer(G, A).holds, core_of_subgroup(G, A).is_trivial())


# -- square-free degree ------------------------------------------------------

@dataclass
class SquareFreeReport:
    fitting: SubgroupHandle
    coprime_ok: bool
    sylows_elem_abelian: bool
    nilpotent_case: bool
    nilpotent_iff_ok: bool
    pi_star: PrimeSet
    n_star: int
    hall_Q: SubgroupHandle
    C: SubgroupHandle
    index_ok: bool
    actions_equivalent_ok: bool

    @property
    def ok(self) -> bool:
        return (self.coprime_ok and self.sylows_elem_abelian and self.nilpotent_iff_ok
                and self.index_ok and self.actions_equivalent_ok)


def is_squarefree(n: int) -> bool:
    return all(p_exponent(n, p) == 1 for p in prime_factors(n))


def _is_cyclic(G: PermGroup) -> bool:
    from .structure import _element_orders

    return bool((_element_orders(G) == G.order).any())


def squarefree_analyze(G: PermGroup, A: SubgroupHandle) -> SquareFreeReport:
    """Fitting-subgroup structure for a core-free mt-stabilizer of square-free index."""
    n = G.order // A.order
    if G.order == 1:
        raise HypothesisNotSatisfied("trivial group")
    if not is_squarefree(n):
        raise HypothesisNotSatisfied("index not square-free", str(n))
    if not group_predicates(G).is_solvable:
        raise NotSolvable()
    if not core_of_subgroup(G, A).is_trivial():
        raise HypothesisNotSatisfied("A not core-free")
    if not is_mt_stabilizer(G, A):
        raise HypothesisNotSatisfied("A not an mt-stabilizer")
    F = fitting_subgroup(G)
    coprime = gcd(F.order, G.order // F.order) == 1
    elem = True
    for p in prime_factors(F.order):
        Fp = core_of_subgroup(G, sylow_subgroup(G, p))  # O_p(G), the Sylow p of F
        elem &= group_predicates(subgroup_group(Fp)).is_elementary_abelian
    nilpotent = group_predicates(G).is_nilpotent
    cyclic_case = _is_cyclic(G) and G.order == n and A.is_trivial()
    pi_star = PrimeSet.of(n) - prime_factors(F.order)
    n_star = prod(pi_star.primes)
    C = _hall_of_subgroup(A, pi_star)
    Qs = [H for H in all_subgroups(G) if H.order == pi_star.part(G.order) and C <= H]
    if not Qs:  # pragma: no cover - Hall's theorem
        raise RuntimeError("no Hall subgroup containing C")
    Q = Qs[0]
    index_ok = Q.order // C.order == n_star
    X = subgroup_group(Q)
    q_action = coset_action(X, restrict(C, Q))
    g_action = coset_action(G, join(A, F))
    equiv = q_action.degree == g_action.degree and actions_equivalent(q_action, g_action) is not None
    return SquareFreeReport(F, coprime, elem, cyclic_case, nilpotent == cyclic_case, pi_star, n_star,
                            Q, C, index_ok, equiv)


def _hall_of_subgroup(A: SubgroupHandle, pi: PrimeSet) -> SubgroupHandle:
    """Least Hall ``pi``-subgroup of ``A``, as a subgroup of the parent."""
    target = pi.part(A.order)
    if target == 1:
        return trivial_subgroup(A.parent)
    for H in all_subgroups(A.parent):
        if H.order == target and H <= A:
            return H
    raise NotSolvable("subgroup has no Hall subgroup")


# -- normal q-subgroups when q divides the degree once ----------------------

@dataclass
class NormalQReport:
    q: int
    elem_abelian_ok: bool
    sylow_ok: bool
    irreducible_ok: bool

    @property
    def ok(self) -> bool:
        return self.elem_abelian_ok and self.sylow_ok and self.irreducible_ok


def normal_q_subgroup_check(G: PermGroup, A: SubgroupHandle, N: SubgroupHandle) -> NormalQReport:
    """A non-trivial normal ``q``-subgroup, ``q`` dividing ``|G:A|`` exactly
    once, must be an elementary abelian Sylow subgroup on which ``G`` acts
    irreducibly (no ``G``-normal subgroups strictly between 1 and ``N``).
    """
    if N.is_trivial() or not is_p_group(N.order):
        raise HypothesisNotSatisfied("N not a non-trivial q-group")
    q = prime_factors(N.order)[0]
    n = G.order // A.order
    if p_exponent(n, q) != 1:
        raise HypothesisNotSatisfied("q does not divide the index exactly once", f"q={q}, index={n}")
    if not is_normal(N):
        raise HypothesisNotSatisfied("N not normal")
    if not group_predicates(G).is_solvable:
        raise NotSolvable()
    if not core_of_subgroup(G, A).is_trivial():
        raise HypothesisNotSatisfied("A not core-free")
    if not is_mt_stabilizer(G, A):
        raise HypothesisNotSatisfied("A not an mt-stabilizer")
    elem = group_predicates(subgroup_group(N)).is_elementary_abelian
    sylow = N.order == p_part(G.order, q)
    irreducible = not any(M.order > 1 and M < N for M in normal_subgroups(G))
    return NormalQReport(q, elem, sylow, irreducible)


# -- degree pq classification -------------------------------------------------

SK_CASES = (
    "cyclic_pq",
    "P_normal_minimal_nonabelian",
    "Q_normal_minimal_nonabelian",
    "kopylova_order_qtp",
    "kopylova_order_qr1_pq",
    "kopylova_order_pql",
    "unclassified",
)


@dataclass
class SkClassification:
    case: str
    p: int
    q: int
    exponent: int | None = None
    diagnostic: str = ""

    def as_dict(self) -> dict:
        return {"case": self.case, "p": self.p, "q": self.q, "exponent": self.exponent,
                "diagnostic": self.diagnostic}

    @property
    def ok(self) -> bool:
        return self.case != "unclassified"


def degree_pq_primes(n: int) -> tuple[int, int] | None:
    """``(p, q)`` with ``n = pq`` and ``q < p`` distinct primes, else ``None``."""
    ps = prime_factors(n)
    if len(ps) == 2 and ps[0] * ps[1] == n:
        return ps[1], ps[0]
    return None


def is_minimal_nonabelian(G: PermGroup) -> bool:
    if group_predicates(G).is_abelian:
        return False
    return all(group_predicates(subgroup_group(M)).is_abelian for M in maximal_subgroups(G))


def classify_degree_pq(G: PermGroup) -> SkClassification:
    """Match a minimally transitive group of degree ``pq`` (``q < p``)
    against the Suprunenko cases (``q`` not dividing ``p - 1``) or the
    Kopylova order patterns (``q`` dividing ``p - 1``).
    """
    primes = degree_pq_primes(G.degree)
    if primes is None:
        raise HypothesisNotSatisfied("degree not a product of two distinct primes", str(G.degree))
    p, q = primes
    if not is_minimally_transitive(G):
        raise HypothesisNotSatisfied("group not minimally transitive")
    order = G.order
    if (p - 1) % q != 0:
        preds = group_predicates(G)
        if preds.is_abelian:
            if order == p * q:
                return SkClassification("cyclic_pq", p, q)
            return SkClassification("unclassified", p, q, None, f"abelian of order {order}")
        if not is_minimal_nonabelian(G):
            return SkClassification("unclassified", p, q, None, "not minimal non-abelian")
        P, Q = sylow_subgroup(G, p), sylow_subgroup(G, q)
        m = multiplicative_order(p, q)
        r = multiplicative_order(q, p)
        if is_normal(P) and Q.order == q and P.order == p ** m and order == p ** m * q:
            return SkClassification("P_normal_minimal_nonabelian", p, q, m)
        if is_normal(Q) and P.order == p and Q.order == q ** r and order == p * q ** r:
            return SkClassification("Q_normal_minimal_nonabelian", p, q, r)
        return SkClassification("unclassified", p, q, None,
                                f"order {order}, |P|={P.order}, |Q|={Q.order}, m={m}, r={r}")
    r = p_exponent(p - 1, q)
    l = multiplicative_order(q, p)
    for t in range(1, r + 1):
        if order == q ** t * p:
            return SkClassification("kopylova_order_qtp", p, q, t)
    if order == q ** (r + 1) * p ** q:
        return SkClassification("kopylova_order_qr1_pq", p, q, r)
    if order == p * q ** l:
        return SkClassification("kopylova_order_pql", p, q, l)
    return SkClassification("unclassified", p, q, None, f"order {order} matches no pattern (r={r}, l={l})")


# -- the p^i q reduction process -----------------------------------------------

@dataclass
class ReductionStep:
    rule: str
    input: dict
    normal_subgroup_used: int | None
    output: dict
    branch: str | None = None

    def as_dict(self) -> dict:
        return {"rule": self.rule, "input": self.input, "normal_subgroup_used": self.normal_subgroup_used,
                "output": self.output, "branch": self.branch}


@dataclass
class ReductionTrace:
    steps: list[ReductionStep] = field(default_factory=list)
    terminal: str = "other"
    classification: SkClassification | None = None
    failed_checks: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failed_checks and self.terminal in ("nilpotent", "suprunenko_kopylova")

    def as_dict(self) -> dict:
        return {
            "steps": [s.as_dict() for s in self.steps],
            "terminal": self.terminal,
            "classification": self.classification.as_dict() if self.classification else None,
            "failed_checks": list(self.failed_checks),
        }


def _state(X: PermGroup, B: SubgroupHandle) -> dict:
    return {"group_order": X.order, "stabilizer_order": B.order, "degree": X.order // B.order}


def piq_primes(n: int) -> tuple[int, int, int] | None:
    """``(p, i, q)`` with ``n = p^i q``; for ``n = pq`` the larger prime is ``p``."""
    ps = prime_factors(n)
    if len(ps) != 2:
        return None
    a, b = ps
    ea, eb = p_exponent(n, a), p_exponent(n, b)
    if ea == 1 and eb == 1:
        return b, 1, a
    if eb == 1:
        return a, ea, b
    if ea == 1:
        return b, eb, a
    return None


def reduce_piq_pipeline(G: PermGroup, A: SubgroupHandle, max_steps: int = 64) -> ReductionTrace:
    """Reduce a core-free mt action of degree ``p^i q`` by Fitting subgroups.

    Each round: stop if the group is nilpotent; classify if the degree is
    ``pq``; if a Sylow subgroup ``S`` is normal, pass to ``AS`` (whose image
    is nilpotent) and stop; otherwise ``F = F(G)`` is a ``p``-group, ``AF``
    is mt, and the action on ``G:AF`` modulo its core ``K`` is a faithful mt
    action of degree ``p^j q`` with ``j < i``.
    """
    if not group_predicates(G).is_solvable:
        raise NotSolvable()
    if not core_of_subgroup(G, A).is_trivial():
        raise HypothesisNotSatisfied("A not core-free")
    n0 = G.order // A.order
    if piq_primes(n0) is None:
        raise HypothesisNotSatisfied("index not of the form p^i q", str(n0))
    if not is_mt_stabilizer(G, A):
        raise HypothesisNotSatisfied("A not an mt-stabilizer")

    trace = ReductionTrace()
    fail = trace.failed_checks.append
    X, B = G, A
    for _ in range(max_steps):
        n = X.order // B.order
        if group_predicates(X).is_nilpotent:
            trace.terminal = "nilpotent"
            return trace
        shape = piq_primes(n)
        if shape is None:
            fail(f"degree {n} left the p^i q family")
            return trace
        p, i, q = shape
        if i == 1:
            rec = coset_action(X, B)
            cls = classify_degree_pq(rec.image)
            trace.classification = cls
            trace.steps.append(ReductionStep("sk_classification", _state(X, B), None, _state(X, B)))
            if not cls.ok:
                fail(f"degree {n} group unclassified: {cls.diagnostic}")
            trace.terminal = "suprunenko_kopylova"
            return trace
        normal = normal_sylow_subgroups(X)
        if normal:
            _, S = normal[0]
            C = join(B, S)
            K = core_of_subgroup(X, C)
            Qt = quotient_group(X, K)
            Xn, Bn = Qt.group, Qt.project(C)
            trace.steps.append(ReductionStep("normal_orbit_reduction", _state(X, B), S.order, _state(Xn, Bn)))
            if not is_mt_stabilizer(X, C):
                fail("orbit reduction by a normal Sylow subgroup is not mt")
            if not group_predicates(Xn).is_nilpotent:
                fail("image after normal Sylow reduction is not nilpotent")
            trace.terminal = "nilpotent"
            return trace
        F1 = fitting_subgroup(X)
        if not (is_p_group(F1.order) and F1.order % p == 0):
            fail(f"Fitting subgroup of order {F1.order} is not a non-trivial {p}-group")
            return trace
        C = join(B, F1)
        trace.steps.append(ReductionStep("fitting_step", _state(X, B), F1.order, _state(X, C)))
        if not is_mt_stabilizer(X, C):
            fail("AF not an mt-stabilizer")
        K = core_of_subgroup(X, C)
        Qt = quotient_group(X, K)
        Xn, Bn = Qt.group, Qt.project(C)
        # F2 / F1 = F(X / F1)
        QF = quotient_group(X, F1)
        F2 = QF.lift(fitting_subgroup(QF.group))
        branch = "F2_not_in_K" if not F2 <= K else "F2_in_K"
        trace.steps.append(ReductionStep("quotient_by_core", _state(X, C), K.order, _state(Xn, Bn), branch))
        n_new = Xn.order // Bn.order
        j = p_exponent(n_new, p)
        if Xn.order >= X.order:
            fail("group order did not decrease")
        if not (n_new % q == 0 and p_exponent(n_new, q) == 1 and n_new == p ** j * q and j < i):
            fail(f"degree {n_new} is not p^j q with j < {i}")
        if not p_part(Xn.order, p) < p_part(X.order, p):
            fail("p-part did not decrease")
        if F2.order // F1.order != p_part(F2.order // F1.order, q):
            fail("F2/F1 is not a q-group")
        if branch == "F2_not_in_K":
            img = Qt.project(F2)
            if not (is_normal(img) and img.order == p_part(Xn.order, q)):
                fail("F2K/K is not a normal Sylow q-subgroup")
        elif not p_part(Xn.order, q) < p_part(X.order, q):
            fail("q-part did not decrease although F2 <= K")
        if not core_of_subgroup(Xn, Bn).is_trivial():
            fail("quotient action not faithful")
        X, B = Xn, Bn
    fail("pipeline did not terminate")
    return trace


# -- counterexample dumps -------------------------------------------------------

def counterexample(G: PermGroup, **subgroups: SubgroupHandle) -> dict:
    """Replayable description: generators in cycle notation plus subgroup elements."""
    out = {"degree": G.degree, "generators": [str(g) for g in G.generators]}
    for name, H in subgroups.items():
        out[name] = [str(e) for e in H.elements]
    return out
