"""Census of minimally transitive groups and the theorem verification harness."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import factorial

import numpy as np

from . import kernels
from .catalog import CatalogEntry, default_catalog, symmetric
from .errors import BoundExceeded, HypothesisNotSatisfied, MtGroupsError, TheoremViolation
from .mintrans import (
    assemble_from_split,
    classify_degree_pq,
    counterexample,
    degree_pq_primes,
    fitting_split,
    is_minimally_transitive,
    is_mt_stabilizer,
    normal_q_subgroup_check,
    order_ideal_check,
    piq_primes,
    prime_frattini_check,
    quasiprimitive_and_simple_check,
    quotient_transfer,
    reduce_by_normal,
    reduce_piq_pipeline,
    squarefree_analyze,
    subgroup_descent_analyze,
)
from .perm_core import PermGroup, Permutation, orbit_of, orbits, order_cap, parse_permutation
from .relabel import find_conjugator, invariants
from .structure import (
    all_subgroups,
    core_of_subgroup,
    fitting_subgroup,
    group_predicates,
    hall_subgroup,
    is_p_group,
    join,
    normal_subgroups,
    p_exponent,
    prime_factors,
    PrimeSet,
)

CENSUS_MAX_DEGREE = 10


# -- minimal transitive subgroups -----------------------------------------------

def minimal_transitive_subgroups(G: PermGroup):
    """Minimal members of the poset of transitive subgroups of ``G``."""
    if not G.is_transitive():
        raise HypothesisNotSatisfied("group not transitive")
    n = G.degree
    transitive = [H for H in all_subgroups(G)
                  if H.order % n == 0 and orbits(H.generators, n).is_transitive]
    minimal = [H for H in transitive if not any(T < H for T in transitive)]
    for H in minimal:
        assert is_minimally_transitive(H.as_group()).holds
    for T in transitive:
        assert any(H <= T for H in minimal)
    return minimal


# -- census entries ---------------------------------------------------------------

@dataclass(frozen=True)
class CensusEntry:
    degree: int
    order: int
    generators: tuple[Permutation, ...]
    solvable: bool
    nilpotent: bool
    regular: bool
    sk_classification: dict | None = None

    @property
    def representative(self) -> PermGroup:
        return PermGroup(list(self.generators), self.degree)

    @property
    def attributes(self) -> dict:
        return {"solvable": self.solvable, "nilpotent": self.nilpotent, "regular": self.regular,
                "sk_classification": self.sk_classification}

    def sort_key(self):
        return (self.order, tuple(g.images for g in self.generators))

    def as_dict(self) -> dict:
        return {
            "degree": self.degree,
            "order": self.order,
            "generators": [str(g) for g in self.generators],
            **self.attributes,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CensusEntry":
        n = d["degree"]
        return cls(n, d["order"], tuple(parse_permutation(g, n) for g in d["generators"]),
                   d["solvable"], d["nilpotent"], d["regular"], d.get("sk_classification"))


def canonical_generators(G: PermGroup) -> tuple[Permutation, ...]:
    """Irredundant generators chosen greedily from the sorted element list."""
    rows = G.array
    n = G.degree
    chosen: list[int] = []
    size = 1
    for i in range(1, G.order):
        if size == G.order:
            break
        cand = chosen + [i]
        closure = kernels.perm_closure(rows[cand], n, G.order)
        if len(closure) > size:
            chosen, size = cand, len(closure)
    k = 0
    while k < len(chosen):
        rest = chosen[:k] + chosen[k + 1:]
        if rest and len(kernels.perm_closure(rows[rest], n, G.order)) == G.order:
            chosen = rest
        else:
            k += 1
    return tuple(G.elements[i] for i in chosen)


def census_entry(G: PermGroup) -> CensusEntry:
    preds = group_predicates(G)
    sk = None
    if degree_pq_primes(G.degree) is not None:
        sk = classify_degree_pq(G).as_dict()
    return CensusEntry(G.degree, G.order, canonical_generators(G), preds.is_solvable,
                       preds.is_nilpotent, G.order == G.degree, sk)


# -- the census search ----------------------------------------------------------

def default_census_order(degree: int) -> int:
    """Order bound under which the census is exhaustive.

    For a prime-power degree ``p^k`` a Sylow ``p``-subgroup of a transitive
    group is transitive, so minimally transitive groups are ``p``-groups and
    the ``p``-part of ``degree!`` bounds them.
    """
    ps = prime_factors(degree)
    full = factorial(degree)
    if len(ps) == 1:
        p = ps[0]
        return p ** p_exponent(full, p)
    return min(full, order_cap())


class _ClassStore:
    """Groups up to relabeling, bucketed by invariants."""

    def __init__(self):
        self.buckets: dict[tuple, list[PermGroup]] = {}

    def add(self, G: PermGroup) -> bool:
        bucket = self.buckets.setdefault(invariants(G), [])
        for X in bucket:
            if X == G or find_conjugator(X, G) is not None:
                return False
        bucket.append(G)
        return True

    def groups(self) -> list[PermGroup]:
        return [G for b in self.buckets.values() for G in b]


def _perm_rows(degree: int, prime: int | None) -> np.ndarray:
    S = symmetric(degree).array
    if prime is None:
        return S
    keep = []
    for r in S.tolist():
        order = Permutation._trusted(tuple(r)).order()
        if is_p_group(order):
            if order == 1 or prime_factors(order) == [prime]:
                keep.append(r)
    return np.array(keep, dtype=S.dtype)


def _search_minimal_transitive(degree: int, max_order: int) -> list[PermGroup]:
    """Every minimally transitive subgroup of Sym(degree) of order at most
    ``max_order``, up to relabeling.

    Start from the trivial group. At an intransitive ``H``, let ``j`` be the
    least point outside the orbit of 0 and adjoin each ``x`` with
    ``x(0) = j``. Any minimally transitive ``T`` containing ``H`` contains
    such an ``x``, and ``<H, x>`` is again inside ``T``, so ``T`` is reached
    once the orbit fills up. States are deduplicated up to relabeling, which
    is safe because the argument works from any starting subgroup.
    """
    n = degree
    if n == 1:
        return [PermGroup([], 1)]
    ps = prime_factors(n)
    rows = _perm_rows(n, ps[0] if len(ps) == 1 else None)
    by_image: dict[int, np.ndarray] = {j: rows[rows[:, 0] == j] for j in range(1, n)}
    found = _ClassStore()
    states = _ClassStore()
    trivial = PermGroup([], n)
    stack = [trivial]
    states.add(trivial)
    while stack:
        H = stack.pop()
        hgens = [np.array(g.images, dtype=np.int32) for g in H.generators]
        orb = orbit_of(0, hgens)
        j = min(set(range(n)) - orb)
        cands = by_image[j]
        hrows = H.array
        # x and h x h' (h fixing 0, h' fixing j) give the same join
        h0 = hrows[hrows[:, 0] == 0]
        hj = hrows[hrows[:, j] == j]
        seen_x: set[bytes] = set()
        seen_closure: set[bytes] = set()
        for x in cands:
            if x.tobytes() in seen_x:
                continue
            for r in hj[:, x[h0]].reshape(-1, n):
                seen_x.add(r.tobytes())
            gens = np.array(hgens + [x.astype(np.int32)], dtype=np.int32)
            closure = kernels.perm_closure(gens, n, max_order)
            if closure is None:
                continue
            closure = closure[np.lexsort(closure.T[::-1])]
            key = closure.tobytes()
            if key in seen_closure:
                continue
            seen_closure.add(key)
            if len(np.unique(closure[:, 0])) == n:
                K = PermGroup.from_elements(closure, n)
                if find_transitive_proper_subgroup_cached(K):
                    continue
                found.add(K)
            else:
                K = PermGroup.from_elements(closure, n)
                if states.add(K):
                    stack.append(K)
    return found.groups()


def find_transitive_proper_subgroup_cached(K: PermGroup) -> bool:
    from .mintrans import find_transitive_proper_subgroup

    return find_transitive_proper_subgroup(K) is not None


def mt_census(degree: int, max_order: int | None = None, method: str = "search") -> list[CensusEntry]:
    """All minimally transitive groups of ``degree`` up to relabeling.

    ``method='search'`` is the bottom-up search (exhaustive for groups of
    order at most ``max_order``); ``method='lattice'`` takes the minimal
    transitive subgroups of the full symmetric group from its lattice.
    """
    if degree < 1:
        raise ValueError("degree must be positive")
    if degree > CENSUS_MAX_DEGREE:
        raise BoundExceeded(f"census degree {degree} exceeds the bound {CENSUS_MAX_DEGREE}")
    if method == "lattice":
        S = symmetric(degree)
        store = _ClassStore()
        for H in minimal_transitive_subgroups(S):
            store.add(H.as_group())
        groups = store.groups()
    elif method == "search":
        bound = default_census_order(degree) if max_order is None else max_order
        groups = _search_minimal_transitive(degree, bound)
    else:
        raise ValueError(f"unknown census method {method!r}")
    entries = [census_entry(G) for G in groups]
    for e in entries:
        assert is_minimally_transitive(e.representative).holds
    return sorted(entries, key=CensusEntry.sort_key)


# -- verification harness ---------------------------------------------------------

SUITES = (
    "mt_criteria",
    "subgroup_descent",
    "order_ideal",
    "quasiprimitive_simple",
    "normal_reduction",
    "orbit_action_reduction",
    "quotient_transfer",
    "prime_sets_frattini",
    "fitting_split",
    "squarefree_degree",
    "normal_q_subgroup",
    "piq_reduction",
)


@dataclass
class SuiteCounts:
    instances_tested: int = 0
    inapplicable: int = 0
    violations: int = 0
    counterexamples: list = field(default_factory=list)

    def merge(self, other: "SuiteCounts") -> None:
        self.instances_tested += other.instances_tested
        self.inapplicable += other.inapplicable
        self.violations += other.violations
        self.counterexamples.extend(other.counterexamples)

    def as_dict(self) -> dict:
        return {"instances_tested": self.instances_tested, "inapplicable": self.inapplicable,
                "violations": self.violations}


@dataclass
class VerificationReport:
    suites: dict[str, SuiteCounts]
    groups: list[str]

    @property
    def total_violations(self) -> int:
        return sum(s.violations for s in self.suites.values())

    @property
    def ok(self) -> bool:
        return self.total_violations == 0

    def rows(self) -> list[dict]:
        return [{"suite": name, **self.suites[name].as_dict()} for name in self.suites]


@dataclass
class VerifyBounds:
    max_order: int = 200
    max_degree: int = 7
    jobs: int = 1


class _Recorder:
    def __init__(self, entry: CatalogEntry):
        self.entry = entry
        self.counts = {s: SuiteCounts() for s in SUITES}

    def run(self, suite: str, fn, *args, **subgroups):
        c = self.counts[suite]
        try:
            ok = fn(*args)
        except HypothesisNotSatisfied:
            c.inapplicable += 1
            return None
        except TheoremViolation as exc:
            ok = False
            detail = exc.counterexample
        else:
            detail = None
        c.instances_tested += 1
        if not ok:
            c.violations += 1
            ce = detail or counterexample(self.entry.group, **subgroups)
            ce["group"] = self.entry.name
            c.counterexamples.append(ce)
        return ok


def _verify_group(entry: CatalogEntry) -> dict[str, SuiteCounts]:
    G = entry.group
    rec = _Recorder(entry)
    subs = all_subgroups(G)
    normals = normal_subgroups(G)
    solvable = group_predicates(G).is_solvable

    for A in subs:
        rec.run("mt_criteria", lambda A=A: is_mt_stabilizer(G, A, "all") is not None, A=A)
    mt = [A for A in subs if is_mt_stabilizer(G, A).holds]

    for A in mt:
        for B in subs:
            if B <= A:
                rec.run("subgroup_descent", lambda A=A, B=B: subgroup_descent_analyze(G, A, B).ok, A=A, B=B)
    rec.run("order_ideal", lambda: order_ideal_check(G))
    for A in subs:
        if not A.is_whole():
            rec.run("quasiprimitive_simple", lambda A=A: quasiprimitive_and_simple_check(G, A).ok, A=A)
        else:
            rec.counts["quasiprimitive_simple"].inapplicable += 1

    for A in mt:
        K = core_of_subgroup(G, A)
        for H in normals:
            if not (K < H and not H.is_whole()):
                rec.counts["normal_reduction"].inapplicable += 1
                rec.counts["orbit_action_reduction"].inapplicable += 1
                continue
            red = reduce_by_normal(G, A, H)
            rec.run("normal_reduction", lambda r=red: r.mt_ok and r.strictly_larger_ok, A=A, H=H)
            rec.run("orbit_action_reduction",
                    lambda r=red: r.block_stabilizer_ok and r.equivalent_ok and r.blocks_mt_ok, A=A, H=H)

    for N in normals:
        for A in subs:
            if N <= A:
                rec.run("quotient_transfer", lambda N=N, A=A: quotient_transfer(G, N, A).biconditional_ok, N=N, A=A)

    for A in subs:
        rec.run("prime_sets_frattini", lambda A=A: prime_frattini_check(G, A).ok, A=A)

    core_free_mt = [A for A in mt if core_of_subgroup(G, A).is_trivial()]
    if not solvable:
        for suite in ("fitting_split", "squarefree_degree", "normal_q_subgroup", "piq_reduction"):
            rec.counts[suite].inapplicable += len(core_free_mt)
        return rec.counts

    for A in core_free_mt:
        rec.run("fitting_split", lambda A=A: _split_both_ways(G, A), A=A)
    _split_converse(G, rec)
    for A in core_free_mt:
        rec.run("squarefree_degree", lambda A=A: squarefree_analyze(G, A).ok, A=A)
        n = G.order // A.order
        for N in normals:
            if N.is_trivial() or not is_p_group(N.order):
                continue
            q = prime_factors(N.order)[0]
            if p_exponent(n, q) != 1:
                rec.counts["normal_q_subgroup"].inapplicable += 1
                continue
            rec.run("normal_q_subgroup", lambda A=A, N=N: normal_q_subgroup_check(G, A, N).ok, A=A, N=N)
        if piq_primes(n) is None:
            rec.counts["piq_reduction"].inapplicable += 1
        else:
            rec.run("piq_reduction", lambda A=A: reduce_piq_pipeline(G, A).ok, A=A)
    return rec.counts


def _split_both_ways(G: PermGroup, A) -> bool:
    rep = fitting_split(G, A)
    if not rep.ok:
        return False
    AQ = A & rep.Q
    comps = [(P, A & P) for _, P in rep.normal_sylows]
    back = assemble_from_split(rep.Q, AQ, comps)
    # A lies in the nilpotent F, so it is the product of its pieces
    return back.ok and back.A == A


CONVERSE_LIMIT = 64


def _split_converse(G: PermGroup, rec: _Recorder) -> None:
    """Assemble stabilizers from component data that satisfies the hypotheses."""
    from .mintrans import _split_setup, _component_check, normal_sylow_subgroups

    try:
        F, pi_star, Q, sylows, Qconj = _split_setup(G)
    except HypothesisNotSatisfied:
        rec.counts["fitting_split"].inapplicable += 1
        return
    subs = all_subgroups(G)
    FQ = F & Q
    AQs = [X for X in subs if X <= FQ]
    tried = 0
    for AQ in AQs:
        options = []
        for p, P in sylows:
            good = []
            for AP in subs:
                if not AP <= P:
                    continue
                stab = join(AQ, AP)
                if all(all(_component_check(G, Qs, P, stab)[1:]) for Qs in Qconj):
                    good.append(AP)
            options.append(good)
        if any(not o for o in options):
            rec.counts["fitting_split"].inapplicable += 1
            continue
        # walk the first few combinations deterministically
        combos = [[]]
        for o in options:
            combos = [c + [x] for c in combos for x in o][:CONVERSE_LIMIT]
        for combo in combos:
            if tried >= CONVERSE_LIMIT:
                return
            tried += 1
            comps = [(P, AP) for (_, P), AP in zip(sylows, combo)]

            def check(comps=comps, AQ=AQ):
                out = assemble_from_split(Q, AQ, comps)
                direct = is_mt_stabilizer(G, out.A).holds
                return out.ok and direct == out.mt_ok

            rec.run("fitting_split", check, A=AQ)


def _prime_census_counts(max_degree: int) -> SuiteCounts:
    c = SuiteCounts()
    for p in range(2, max_degree + 1):
        if not (p > 1 and all(p % d for d in range(2, p))):
            continue
        c.instances_tested += 1
        entries = mt_census(p)
        if not (len(entries) == 1 and entries[0].order == p):
            c.violations += 1
            c.counterexamples.append({"degree": p, "entries": [e.as_dict() for e in entries]})
    return c


def verify_theorems(catalog: list[CatalogEntry] | None = None, bounds: VerifyBounds | None = None) -> VerificationReport:
    """Run every theorem suite over the catalog.

    Instances are enumerated per group; results are merged in catalog order
    so the report does not depend on ``bounds.jobs``.
    """
    bounds = bounds or VerifyBounds()
    if catalog is None:
        catalog = default_catalog(bounds.max_order)
    catalog = [e for e in catalog if e.order <= bounds.max_order]
    totals = {s: SuiteCounts() for s in SUITES}
    if bounds.jobs > 1 and len(catalog) > 1:
        with ProcessPoolExecutor(max_workers=bounds.jobs) as pool:
            results = list(pool.map(_verify_group, catalog))
    else:
        results = [_verify_group(e) for e in catalog]
    for counts in results:
        for s in SUITES:
            totals[s].merge(counts[s])
    if catalog and bounds.max_degree >= 2:
        totals["prime_degree_census"] = _prime_census_counts(bounds.max_degree)
    return VerificationReport(totals, [e.name for e in catalog])


def default_jobs() -> int:
    return max(1, min(4, os.cpu_count() or 1))
