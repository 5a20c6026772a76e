"""Permutational equivalence: conjugacy of permutation groups in Sym(n)."""

from __future__ import annotations

from collections import Counter

import numpy as np

from .perm_core import PermGroup, Permutation, conjugate


def _cycle_type_rows(rows: np.ndarray) -> list[tuple[int, ...]]:
    out = []
    for r in rows.tolist():
        n = len(r)
        seen = [False] * n
        lens = []
        for s in range(n):
            if seen[s]:
                continue
            k, j = 0, s
            while not seen[j]:
                seen[j] = True
                j = r[j]
                k += 1
            lens.append(k)
        out.append(tuple(sorted(lens, reverse=True)))
    return out


def invariants(G: PermGroup) -> tuple:
    """Relabeling invariants: degree, order, orbit lengths, cycle-type census."""
    cached = G.cache.get("relabel_invariants")
    if cached is None:
        lengths = tuple(sorted(len(b) for b in G.orbits().blocks))
        census = tuple(sorted(Counter(_cycle_type_rows(G.array)).items()))
        cached = (G.degree, G.order, lengths, census)
        G.cache["relabel_invariants"] = cached
    return cached


def find_conjugator(X: PermGroup, Y: PermGroup) -> Permutation | None:
    """A permutation ``b`` with ``b^-1 X b == Y``, or ``None``.

    Backtracking over the images of points. For every generator ``h`` of X
    we keep the elements ``k`` of Y still compatible with ``b^-1 h b == k``
    on the points assigned so far (``k(b(x)) == b(h(x))``); an empty set
    prunes the branch.
    """
    if invariants(X) != invariants(Y):
        return None
    n = X.degree
    gens = [np.array(g.images) for g in X.generators]
    if not gens:
        return Permutation.identity(n)
    yrows = Y.array
    ytypes = _cycle_type_rows(yrows)
    cands0 = []
    for g in X.generators:
        ct = g.cycle_type()
        cands0.append(yrows[[i for i, t in enumerate(ytypes) if t == ct]])
    ginv = [np.argsort(g) for g in gens]

    xorb = X.orbits()
    yorb = Y.orbits()
    xlen = [0] * n
    for b in xorb.blocks:
        for p in b:
            xlen[p] = len(b)
    ylen = [0] * n
    for b in yorb.blocks:
        for p in b:
            ylen[p] = len(b)

    # visit points orbit by orbit, each orbit in breadth-first order
    order: list[int] = []
    for block in xorb.blocks:
        seen = {block[0]}
        queue = [block[0]]
        while queue:
            x = queue.pop(0)
            order.append(x)
            for g in gens:
                y = int(g[x])
                if y not in seen:
                    seen.add(y)
                    queue.append(y)

    beta = [-1] * n
    used = [False] * n

    def filter_cands(cands, a):
        out = []
        b = beta[a]
        for h, hinv, C in zip(gens, ginv, cands):
            # constraint from x = a: k(beta[a]) = beta[h(a)]
            ha = int(h[a])
            if beta[ha] >= 0:
                C = C[C[:, b] == beta[ha]]
            # constraint from x = h^-1(a): k(beta[x]) = beta[a]
            xa = int(hinv[a])
            if beta[xa] >= 0 and xa != a:
                C = C[C[:, beta[xa]] == b]
            if len(C) == 0:
                return None
            out.append(C)
        return out

    def search(depth, cands):
        if depth == n:
            return True
        a = order[depth]
        for b in range(n):
            if used[b] or ylen[b] != xlen[a]:
                continue
            beta[a] = b
            used[b] = True
            nxt = filter_cands(cands, a)
            if nxt is not None and search(depth + 1, nxt):
                return True
            beta[a] = -1
            used[b] = False
        return False

    if not search(0, cands0):
        return None
    b = Permutation(beta)
    assert all(conjugate(g, b) in Y for g in X.generators)
    return b


def are_conjugate(X: PermGroup, Y: PermGroup) -> bool:
    return find_conjugator(X, Y) is not None
