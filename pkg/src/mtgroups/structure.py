"""Subgroup computations inside a fixed parent group.

Subgroups are bitsets over the parent's sorted element list (Python ints,
bit ``i`` set when element ``i`` belongs), so intersections, containment and
orders are single integer operations. Everything heavier goes through the
parent's Cayley table.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from math import prod
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import BoundExceeded, HypothesisNotSatisfied, NotSolvable
from .perm_core import PermGroup, Permutation, orbits

DEFAULT_LATTICE_BOUND = 2_000


def lattice_bound() -> int:
    value = os.environ.get("MINTRANS_LATTICE_BOUND")
    return int(value) if value else DEFAULT_LATTICE_BOUND


# -- integers and primes ----------------------------------------------------

def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]


def p_part(n: int, p: int) -> int:
    """Highest power of ``p`` dividing ``n``."""
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def p_exponent(n: int, p: int) -> int:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def multiplicative_order(a: int, m: int) -> int:
    a %= m
    if a == 0:
        raise ValueError(f"{a} is not a unit mod {m}")
    k, x = 1, a
    while x != 1:
        x = x * a % m
        k += 1
    return k


@dataclass(frozen=True)
class PrimeSet:
    primes: tuple[int, ...] = ()

    def __post_init__(self):
        ps = tuple(sorted(set(self.primes)))
        for p in ps:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
        object.__setattr__(self, "primes", ps)

    @classmethod
    def of(cls, n: int) -> "PrimeSet":
        return cls(tuple(prime_factors(n)))

    def __iter__(self):
        return iter(self.primes)

    def __contains__(self, p) -> bool:
        return p in self.primes

    def __len__(self) -> int:
        return len(self.primes)

    def __or__(self, other):
        return PrimeSet(self.primes + tuple(other))

    def __sub__(self, other):
        other = set(other)
        return PrimeSet(tuple(p for p in self.primes if p not in other))

    def part(self, n: int) -> int:
        """The pi-part of ``n``."""
        return prod(p_part(n, p) for p in self.primes)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.primes)) + "}"


# -- bitset helpers ---------------------------------------------------------

def mask_from_members(members: np.ndarray) -> int:
    return int.from_bytes(np.packbits(members.astype(np.uint8), bitorder="little").tobytes(), "little")


def mask_from_indices(idx: Iterable[int]) -> int:
    m = 0
    for i in idx:
        m |= 1 << int(i)
    return m


def indices_from_mask(mask: int, n: int) -> np.ndarray:
    nbytes = (n + 7) // 8
    bits = np.unpackbits(np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8), bitorder="little")
    return np.flatnonzero(bits[:n]).astype(np.int32)


class SubgroupHandle:
    """A subgroup of ``parent``, identified by its element set."""

    __slots__ = ("parent", "mask", "_gens", "__dict__")

    def __init__(self, parent: PermGroup, mask: int, gens: Sequence[int] | None = None):
        self.parent = parent
        self.mask = mask
        self._gens = list(gens) if gens is not None else None

    @property
    def order(self) -> int:
        return self.mask.bit_count()

    @cached_property
    def indices(self) -> np.ndarray:
        return indices_from_mask(self.mask, self.parent.order)

    @cached_property
    def members(self) -> np.ndarray:
        out = np.zeros(self.parent.order, dtype=np.uint8)
        out[self.indices] = 1
        return out

    @property
    def elements(self) -> list[Permutation]:
        els = self.parent.elements
        return [els[i] for i in self.indices]

    @property
    def gens(self) -> list[int]:
        """A small generating set, as parent element indices."""
        if self._gens is None:
            self._gens = _greedy_gens(self.parent, self.indices)
        return self._gens

    @property
    def generators(self) -> list[Permutation]:
        els = self.parent.elements
        return [els[i] for i in self.gens]

    def sort_key(self):
        return (self.order, tuple(self.indices.tolist()))

    def __contains__(self, item) -> bool:
        if isinstance(item, Permutation):
            item = self.parent.index_of(item)
        return bool(self.mask >> int(item) & 1)

    def __le__(self, other: "SubgroupHandle") -> bool:
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "SubgroupHandle") -> bool:
        return self <= other and self.mask != other.mask

    def __and__(self, other: "SubgroupHandle") -> "SubgroupHandle":
        return SubgroupHandle(self.parent, self.mask & other.mask)

    def __eq__(self, other) -> bool:
        return isinstance(other, SubgroupHandle) and self.parent is other.parent and self.mask == other.mask

    def __hash__(self) -> int:
        return hash(self.mask)

    def is_trivial(self) -> bool:
        return self.mask == 1

    def is_whole(self) -> bool:
        return self.order == self.parent.order

    def as_group(self) -> PermGroup:
        """The subgroup as a stand-alone permutation group on the same points."""
        cached = self.__dict__.get("_as_group")
        if cached is None:
            cached = PermGroup.from_elements(self.parent.array[self.indices], self.parent.degree, self.generators)
            self.__dict__["_as_group"] = cached
        return cached

    def __repr__(self) -> str:
        return f"SubgroupHandle(order={self.order}, parent_order={self.parent.order})"


def _greedy_gens(G: PermGroup, idx: np.ndarray) -> list[int]:
    target = len(idx)
    gens: list[int] = []
    members = np.zeros(G.order, dtype=np.uint8)
    members[0] = 1
    count = 1
    for i in idx.tolist():
        if members[i]:
            continue
        gens.append(i)
        members = kernels.table_closure(G.mul, np.flatnonzero(members).astype(np.int32), np.array(gens, dtype=np.int32))
        count = int(members.sum())
        if count == target:
            break
    return gens


def trivial_subgroup(G: PermGroup) -> SubgroupHandle:
    return SubgroupHandle(G, 1, [])


def whole_group(G: PermGroup) -> SubgroupHandle:
    return SubgroupHandle(G, (1 << G.order) - 1, [G.index_of(g) for g in G.generators])


def generate(G: PermGroup, gen_indices: Iterable[int], seed: SubgroupHandle | None = None) -> SubgroupHandle:
    """Subgroup generated by ``gen_indices`` (and ``seed`` if given)."""
    gens = [int(g) for g in gen_indices]
    if seed is not None:
        start = seed.indices
        all_gens = seed.gens + gens
    else:
        start = np.zeros(1, dtype=np.int32)
        all_gens = gens
    if not all_gens:
        return trivial_subgroup(G)
    members = kernels.table_closure(G.mul, start, np.array(all_gens, dtype=np.int32))
    return SubgroupHandle(G, mask_from_members(members), all_gens)


def subgroup(G: PermGroup, generators: Iterable[Permutation]) -> SubgroupHandle:
    """Subgroup of ``G`` generated by permutations (which must lie in ``G``)."""
    return generate(G, [G.index_of(g) for g in generators])


def subgroup_from_elements(G: PermGroup, elements: Iterable[Permutation]) -> SubgroupHandle:
    """Handle for a set of permutations already known to form a subgroup."""
    H = SubgroupHandle(G, mask_from_indices(G.index_of(g) for g in elements))
    if H.order and not _is_closed(H):
        raise ValueError("elements do not form a subgroup")
    return H


def _is_closed(H: SubgroupHandle) -> bool:
    return bool(H.mask & 1) and generate(H.parent, H.indices.tolist()).mask == H.mask


def join(H: SubgroupHandle, K: SubgroupHandle) -> SubgroupHandle:
    """``<H, K>``."""
    if K <= H:
        return H
    if H <= K:
        return K
    return generate(H.parent, K.gens, seed=H)


def product_order(A: SubgroupHandle, B: SubgroupHandle) -> int:
    """``|AB|`` as a set, whether or not it is a subgroup."""
    return A.order * B.order // (A.mask & B.mask).bit_count()


def product_is_whole(A: SubgroupHandle, B: SubgroupHandle) -> bool:
    """``AB = G``, i.e. ``B`` is transitive on the cosets of ``A``."""
    return A.order * B.order == A.parent.order * (A.mask & B.mask).bit_count()


def normal_product(H: SubgroupHandle, N: SubgroupHandle) -> SubgroupHandle:
    """``HN`` for ``N`` normal (hence a subgroup)."""
    return join(H, N)


# -- conjugation ------------------------------------------------------------

def _conj_table(G: PermGroup) -> np.ndarray:
    """``conj[g, x]`` is the index of ``g^-1 x g``."""
    tab = G.cache.get("conj")
    if tab is None:
        mul, inv = G.mul, G.inv
        tab = mul[mul[inv][:, :], np.arange(G.order)[:, None]]
        G.cache["conj"] = tab
    return tab


def conjugate_subgroup(H: SubgroupHandle, g: int) -> SubgroupHandle:
    conj = _conj_table(H.parent)
    return SubgroupHandle(H.parent, mask_from_indices(conj[g, H.indices]))


def is_normal(H: SubgroupHandle, within: SubgroupHandle | None = None) -> bool:
    G = H.parent
    conj = _conj_table(G)
    gens = within.gens if within is not None else [G.index_of(g) for g in G.generators]
    members = H.members
    for g in gens:
        if not members[conj[g, H.indices]].all():
            return False
    return True


def normalizer(H: SubgroupHandle) -> SubgroupHandle:
    G = H.parent
    conj = _conj_table(G)
    ok = H.members[conj[:, H.indices]].all(axis=1)
    return SubgroupHandle(G, mask_from_members(ok))


def normal_closure(G: PermGroup, gen_indices: Iterable[int], within: SubgroupHandle | None = None) -> SubgroupHandle:
    """Smallest subgroup normal in ``within`` (default ``G``) containing the given elements."""
    idx = np.array(sorted(set(int(i) for i in gen_indices)), dtype=np.int32)
    if len(idx) == 0:
        return trivial_subgroup(G)
    conj = _conj_table(G)
    rows = conj[:, idx] if within is None else conj[within.indices][:, idx]
    gens = np.unique(rows)
    members = kernels.table_closure(G.mul, np.zeros(1, dtype=np.int32), gens.astype(np.int32))
    return SubgroupHandle(G, mask_from_members(members))


def commutator(G: PermGroup, a: int, b: int) -> int:
    mul, inv = G.mul, G.inv
    return int(mul[mul[mul[inv[a], inv[b]], a], b])


def commutator_subgroup(X: SubgroupHandle, Y: SubgroupHandle, within: SubgroupHandle) -> SubgroupHandle:
    """``[X, Y]`` as the normal closure in ``within`` of commutators of generators."""
    G = X.parent
    comms = {commutator(G, a, b) for a in X.gens for b in Y.gens}
    comms.discard(0)
    return normal_closure(G, comms, within)


# -- lattice ----------------------------------------------------------------

def _check_lattice_bound(G: PermGroup) -> None:
    if G.order > lattice_bound():
        raise BoundExceeded(f"subgroup lattice of order {G.order} exceeds bound {lattice_bound()}")


def cyclic_subgroups(G: PermGroup) -> list[SubgroupHandle]:
    cached = G.cache.get("cyclic")
    if cached is not None:
        return cached
    seen: dict[int, SubgroupHandle] = {}
    for g in range(G.order):
        members = kernels.table_closure(G.mul, np.zeros(1, dtype=np.int32), np.array([g], dtype=np.int32))
        m = mask_from_members(members)
        if m not in seen:
            seen[m] = SubgroupHandle(G, m, [g] if g else [])
    out = sorted(seen.values(), key=SubgroupHandle.sort_key)
    G.cache["cyclic"] = out
    return out


def all_subgroups(G: PermGroup) -> list[SubgroupHandle]:
    """Every subgroup exactly once, sorted by (order, element list).

    Cyclic extension: starting from the trivial group, join each known
    subgroup with every cyclic subgroup of prime-power order it does not
    contain. Every subgroup is the join of its prime-power cyclic subgroups,
    so the closure of this process is the whole lattice.
    """
    cached = G.cache.get("lattice")
    if cached is not None:
        return cached
    _check_lattice_bound(G)
    mul = G.mul
    pp = [Z for Z in cyclic_subgroups(G) if len(prime_factors(Z.order)) == 1]
    found: dict[int, SubgroupHandle] = {1: trivial_subgroup(G)}
    queue = [found[1]]
    while queue:
        H = queue.pop()
        hidx = H.indices
        for Z in pp:
            if Z.mask & ~H.mask == 0:
                continue
            gens = H.gens + Z.gens
            members = kernels.table_closure(mul, hidx, np.array(gens, dtype=np.int32))
            m = mask_from_members(members)
            if m not in found:
                J = SubgroupHandle(G, m, gens)
                found[m] = J
                queue.append(J)
    out = sorted(found.values(), key=SubgroupHandle.sort_key)
    G.cache["lattice"] = out
    return out


def lattice_index(G: PermGroup) -> dict[int, SubgroupHandle]:
    cached = G.cache.get("lattice_index")
    if cached is None:
        cached = {H.mask: H for H in all_subgroups(G)}
        G.cache["lattice_index"] = cached
    return cached


def canonical(H: SubgroupHandle) -> SubgroupHandle:
    """The lattice's own handle for ``H`` (shares cached data)."""
    return lattice_index(H.parent).get(H.mask, H)


def maximal_subgroups(G: PermGroup) -> list[SubgroupHandle]:
    cached = G.cache.get("maximal")
    if cached is not None:
        return cached
    subs = all_subgroups(G)
    full = (1 << G.order) - 1
    proper = [H for H in subs if H.mask != full]
    out = []
    for i, H in enumerate(proper):
        hm = H.mask
        if not any(K.mask & hm == hm for K in proper[i + 1:] if K.order > H.order):
            out.append(H)
    G.cache["maximal"] = out
    return out


def normal_subgroups(G: PermGroup) -> list[SubgroupHandle]:
    cached = G.cache.get("normal")
    if cached is None:
        cached = [H for H in all_subgroups(G) if is_normal(H)]
        G.cache["normal"] = cached
    return cached


def core_of_subgroup(G: PermGroup, A: SubgroupHandle) -> SubgroupHandle:
    """Intersection of all conjugates of ``A`` (over a right transversal)."""
    cache = G.cache.setdefault("core", {})
    hit = cache.get(A.mask)
    if hit is not None:
        return hit
    _, reps = kernels.coset_labels(G.mul, A.indices)
    conj = _conj_table(G)
    m = A.mask
    for g in reps.tolist():
        m &= mask_from_indices(conj[g, A.indices])
        if m == 1:
            break
    K = SubgroupHandle(G, m)
    cache[A.mask] = K
    return K


def is_core_free(G: PermGroup, A: SubgroupHandle) -> bool:
    return core_of_subgroup(G, A).is_trivial()


# -- coset actions and quotients --------------------------------------------

@dataclass(eq=False)
class CosetActionRecord:
    """``G`` acting on the right cosets ``A x`` by right multiplication.

    Point ``c`` is the ``c``-th coset in order of least element; point 0 is
    ``A`` itself. ``images[g]`` is the permutation induced by element ``g``.
    """

    source: PermGroup
    point_stabilizer: SubgroupHandle
    degree: int
    images: np.ndarray
    labels: np.ndarray
    reps: np.ndarray
    image: PermGroup
    image_index: np.ndarray
    kernel: SubgroupHandle

    @property
    def coset_labels(self) -> list[Permutation]:
        """Least element of each coset, in point order."""
        els = self.source.elements
        return [els[i] for i in self.reps.tolist()]

    def element_map(self, g: Permutation | int) -> Permutation:
        if isinstance(g, Permutation):
            g = self.source.index_of(g)
        return Permutation._trusted(tuple(self.images[g].tolist()))

    def image_of(self, H: SubgroupHandle) -> SubgroupHandle:
        """Image of a subgroup of the source as a subgroup of ``image``."""
        return SubgroupHandle(self.image, mask_from_indices(np.unique(self.image_index[H.indices])))

    def preimage(self, Hbar: SubgroupHandle) -> SubgroupHandle:
        return SubgroupHandle(self.source, mask_from_members(Hbar.members[self.image_index]))


def coset_action(G: PermGroup, A: SubgroupHandle) -> CosetActionRecord:
    cache = G.cache.setdefault("coset_action", {})
    hit = cache.get(A.mask)
    if hit is not None:
        return hit
    mul = G.mul
    labels, reps = kernels.coset_labels(mul, A.indices)
    degree = len(reps)
    # images[g, c] = label of reps[c] * g
    images = np.ascontiguousarray(labels[mul[reps]].T)
    ident = np.arange(degree, dtype=np.int32)
    in_kernel = (images == ident).all(axis=1)
    kernel = SubgroupHandle(G, mask_from_members(in_kernel))
    gen_images = [Permutation._trusted(tuple(images[G.index_of(g)].tolist())) for g in G.generators]
    uniq, inverse_idx = np.unique(images, axis=0, return_inverse=True)
    image = PermGroup.from_elements(uniq, degree, gen_images)
    # np.unique sorts rows lexicographically, matching PermGroup's element order
    image_index = np.asarray(inverse_idx, dtype=np.int32).reshape(-1)
    rec = CosetActionRecord(G, A, degree, images, labels, reps, image, image_index, kernel)
    cache[A.mask] = rec
    return rec


@dataclass(eq=False)
class Quotient:
    """``G/N`` realized as the coset action on ``G:N``."""

    group: PermGroup
    normal: SubgroupHandle
    record: CosetActionRecord

    @property
    def projection(self) -> np.ndarray:
        return self.record.image_index

    def project(self, H: SubgroupHandle) -> SubgroupHandle:
        return self.record.image_of(H)

    def lift(self, Hbar: SubgroupHandle) -> SubgroupHandle:
        return self.record.preimage(Hbar)


def quotient_group(G: PermGroup, N: SubgroupHandle) -> Quotient:
    if not is_normal(N):
        raise HypothesisNotSatisfied("subgroup not normal", f"order {N.order} in group of order {G.order}")
    rec = coset_action(G, N)
    return Quotient(rec.image, N, rec)


# -- Sylow, Hall, Fitting, Frattini -----------------------------------------

def _element_orders(G: PermGroup) -> np.ndarray:
    cached = G.cache.get("element_orders")
    if cached is None:
        mul = G.mul
        n = G.order
        cached = np.zeros(n, dtype=np.int64)
        cur = np.arange(n, dtype=np.int32)
        k = 1
        pending = np.ones(n, dtype=bool)
        while pending.any():
            done = pending & (cur == 0)
            cached[done] = k
            pending &= ~done
            cur = mul[cur, np.arange(n)]
            k += 1
        G.cache["element_orders"] = cached
    return cached


def _least_conjugate(H: SubgroupHandle) -> SubgroupHandle:
    G = H.parent
    N = normalizer(H)
    _, reps = kernels.coset_labels(G.mul, N.indices)
    best = None
    for g in reps.tolist():
        C = conjugate_subgroup(H, g)
        if best is None or C.sort_key() < best.sort_key():
            best = C
    return best


def sylow_subgroup(G: PermGroup, p: int) -> SubgroupHandle:
    """Lexicographically least Sylow ``p``-subgroup.

    Grows a ``p``-subgroup inside successive normalizers: while ``|P| <
    |G|_p``, ``p`` divides ``|N(P):P|`` and an element of ``N(P)`` whose
    ``p``-power lies in ``P`` enlarges ``P``.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    cache = G.cache.setdefault("sylow", {})
    if p in cache:
        return cache[p]
    target = p_part(G.order, p)
    P = trivial_subgroup(G)
    mul = G.mul
    while P.order < target:
        N = normalizer(P)
        grown = None
        for x in N.indices.tolist():
            if x in P:
                continue
            # order of xP in N/P must be a power of p
            y, k = x, 1
            while not (P.mask >> y & 1):
                y = int(mul[y, x])
                k += 1
            if p_part(k, p) == k:
                grown = generate(G, [x], seed=P)
                break
        if grown is None:  # pragma: no cover - impossible by Sylow theory
            raise RuntimeError(f"failed to enlarge a {p}-subgroup of order {P.order}")
        P = grown
    P = _least_conjugate(P)
    cache[p] = P
    return P


def hall_subgroup(G: PermGroup, pi: PrimeSet | Iterable[int]) -> SubgroupHandle:
    """Lexicographically least Hall ``pi``-subgroup of a solvable group."""
    pi = pi if isinstance(pi, PrimeSet) else PrimeSet(tuple(pi))
    if not group_predicates(G).is_solvable:
        raise NotSolvable(f"Hall subgroups requested in non-solvable group of order {G.order}")
    target = pi.part(G.order)
    if target == 1:
        return trivial_subgroup(G)
    if target == G.order:
        return whole_group(G)
    for H in all_subgroups(G):
        if H.order == target:
            return H
    raise RuntimeError(f"solvable group of order {G.order} has no Hall {pi}-subgroup")  # pragma: no cover


def hall_subgroups_containing(G: PermGroup, pi: PrimeSet, C: SubgroupHandle) -> list[SubgroupHandle]:
    target = pi.part(G.order)
    return [H for H in all_subgroups(G) if H.order == target and C <= H]


def p_core(G: PermGroup, p: int) -> SubgroupHandle:
    """``O_p(G)``: the core of a Sylow ``p``-subgroup."""
    return core_of_subgroup(G, sylow_subgroup(G, p))


def fitting_subgroup(G: PermGroup) -> SubgroupHandle:
    cached = G.cache.get("fitting")
    if cached is not None:
        return cached
    F = trivial_subgroup(G)
    for p in prime_factors(G.order):
        F = join(F, p_core(G, p))
    G.cache["fitting"] = F
    return F


def frattini_subgroup(G: PermGroup) -> SubgroupHandle:
    cached = G.cache.get("frattini")
    if cached is not None:
        return cached
    m = (1 << G.order) - 1
    for M in maximal_subgroups(G):
        m &= M.mask
    F = SubgroupHandle(G, m)
    G.cache["frattini"] = F
    return F


def frattini_containing(G: PermGroup, K: SubgroupHandle) -> SubgroupHandle:
    """Preimage of ``Phi(G/K)``: intersection of maximal subgroups containing ``K``."""
    m = (1 << G.order) - 1
    for M in maximal_subgroups(G):
        if K <= M:
            m &= M.mask
    return SubgroupHandle(G, m)


# -- predicates -------------------------------------------------------------

@dataclass(frozen=True)
class GroupPredicates:
    order: int
    is_abelian: bool
    is_elementary_abelian: bool
    is_nilpotent: bool
    is_solvable: bool
    is_simple: bool
    prime_set: PrimeSet = field(default_factory=PrimeSet)

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "is_abelian": self.is_abelian,
            "is_elementary_abelian": self.is_elementary_abelian,
            "is_nilpotent": self.is_nilpotent,
            "is_solvable": self.is_solvable,
            "is_simple": self.is_simple,
            "prime_set": list(self.prime_set),
        }


def derived_series(G: PermGroup) -> list[SubgroupHandle]:
    series = [whole_group(G)]
    while True:
        X = series[-1]
        D = commutator_subgroup(X, X, X)
        if D.mask == X.mask:
            return series
        series.append(D)
        if D.is_trivial():
            return series


def lower_central_series(G: PermGroup) -> list[SubgroupHandle]:
    W = whole_group(G)
    series = [W]
    while True:
        X = series[-1]
        D = commutator_subgroup(X, W, W)
        if D.mask == X.mask:
            return series
        series.append(D)
        if D.is_trivial():
            return series


def _is_simple(G: PermGroup) -> bool:
    if G.order == 1:
        return False
    conj = _conj_table(G)
    seen = np.zeros(G.order, dtype=bool)
    seen[0] = True
    full = (1 << G.order) - 1
    for x in range(1, G.order):
        if seen[x]:
            continue
        cls = np.unique(conj[:, x])
        seen[cls] = True
        if normal_closure(G, cls.tolist()).mask != full:
            return False
    return True


def group_predicates(G: PermGroup) -> GroupPredicates:
    cached = G.cache.get("predicates")
    if cached is not None:
        return cached
    gens = G.generators
    abelian = all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])
    elem = False
    if abelian:
        exps = {g.order() for g in gens}
        elem = not exps or (len(exps) == 1 and is_prime(exps.pop()))
    solvable = derived_series(G)[-1].is_trivial()
    nilpotent = lower_central_series(G)[-1].is_trivial()
    preds = GroupPredicates(
        order=G.order,
        is_abelian=abelian,
        is_elementary_abelian=elem,
        is_nilpotent=nilpotent,
        is_solvable=solvable,
        is_simple=_is_simple(G),
        prime_set=PrimeSet.of(G.order),
    )
    G.cache["predicates"] = preds
    return preds


def subgroup_predicates(H: SubgroupHandle) -> GroupPredicates:
    return group_predicates(H.as_group())


def is_p_group(n: int) -> bool:
    return n == 1 or len(prime_factors(n)) == 1


def transitive_on_points(H: SubgroupHandle) -> bool:
    return orbits(H.generators, H.parent.degree).is_transitive if H.order > 1 else H.parent.degree == 1
