"""Pure-Python twins of the compiled kernels in ``_kernels.pyx``."""

from collections import deque
from math import factorial

import numpy as np


def table_closure(mul, seed, gens):
    n = mul.shape[0]
    rows = mul.tolist()
    gens = [int(g) for g in gens]
    member = bytearray(n)
    queue = deque()
    for x in seed:
        x = int(x)
        if not member[x]:
            member[x] = 1
            queue.append(x)
    while queue:
        row = rows[queue.popleft()]
        for g in gens:
            y = row[g]
            if not member[y]:
                member[y] = 1
                queue.append(y)
    return np.frombuffer(bytes(member), dtype=np.uint8).copy()


def distinct_count(labels, idx, nlabels):
    return len({int(labels[i]) for i in idx})


def coset_labels(mul, sub):
    n = mul.shape[0]
    m = len(sub)
    labels = np.full(n, -1, dtype=np.int32)
    reps = np.empty(n // m, dtype=np.int32)
    count = 0
    for x in range(n):
        if labels[x] < 0:
            reps[count] = x
            labels[mul[sub, x]] = count
            count += 1
    return labels, reps


def perm_closure(gens, degree, cap):
    gens = [tuple(int(v) for v in g) for g in gens]
    ident = tuple(range(degree))
    seen = {ident}
    order = [ident]
    head = 0
    while head < len(order):
        row = order[head]
        head += 1
        for g in gens:
            y = tuple(g[v] for v in row)
            if y not in seen:
                if len(order) >= cap:
                    return None
                seen.add(y)
                order.append(y)
    return np.array(order, dtype=np.int32).reshape(len(order), degree)


def lehmer_ranks(perms):
    out = np.empty(len(perms), dtype=np.int64)
    for r, row in enumerate(perms.tolist()):
        n = len(row)
        rank = 0
        for i in range(n):
            c = sum(1 for j in range(i + 1, n) if row[j] < row[i])
            rank += c * factorial(n - 1 - i)
        out[r] = rank
    return out
