"""Permutations, permutation groups and orbits.

Conventions used throughout the package:

* points are ``0..n-1`` internally and ``1..n`` in every text format;
* ``a * b`` (``compose(a, b)``) applies ``a`` first, then ``b``, so
  ``(a * b)(i) == b(a(i))``;
* the elements of a group are kept sorted lexicographically by image tuple,
  which puts the identity at index 0.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import BoundExceeded

DEFAULT_ORDER_CAP = 20_000
DEFAULT_TABLE_CAP = 2_000


def table_cap() -> int:
    """Largest group for which a Cayley table is built (``MINTRANS_TABLE_CAP``)."""
    value = os.environ.get("MINTRANS_TABLE_CAP")
    return int(value) if value else DEFAULT_TABLE_CAP


def order_cap() -> int:
    """Largest closure the package will compute (``MINTRANS_MAX_ORDER`` overrides)."""
    value = os.environ.get("MINTRANS_MAX_ORDER")
    return int(value) if value else DEFAULT_ORDER_CAP


class Permutation:
    """A bijection of ``{0, ..., n-1}`` stored as its image table."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        n = len(images)
        if n < 1:
            raise ValueError("permutation degree must be at least 1")
        if sorted(images) != list(range(n)):
            raise ValueError(f"not a permutation of 0..{n - 1}: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _trusted(cls, images: tuple) -> "Permutation":
        p = cls.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        """Build from 0-based cycles."""
        images = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a] = b
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, k: int) -> "Permutation":
        return power(self, k)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def inverse(self) -> "Permutation":
        return inverse(self)

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its least point."""
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        lengths = [len(c) for c in self.cycles()]
        lengths += [1] * (self.degree - sum(lengths))
        return tuple(sorted(lengths, reverse=True))

    def order(self) -> int:
        o = 1
        for c in self.cycles():
            o = o * len(c) // gcd(o, len(c))
        return o

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return format_permutation(self)

    def __repr__(self) -> str:
        return f"Permutation({format_permutation(self)!r}, degree={self.degree})"


def _check_degrees(a: Permutation, b: Permutation) -> None:
    if a.degree != b.degree:
        raise ValueError(f"degree mismatch: {a.degree} != {b.degree}")


def compose(a: Permutation, b: Permutation) -> Permutation:
    """``a`` then ``b``."""
    _check_degrees(a, b)
    bi = b.images
    return Permutation._trusted(tuple(bi[i] for i in a.images))


def inverse(a: Permutation) -> Permutation:
    out = [0] * a.degree
    for i, v in enumerate(a.images):
        out[v] = i
    return Permutation._trusted(tuple(out))


def power(a: Permutation, k: int) -> Permutation:
    if k < 0:
        return power(inverse(a), -k)
    result = Permutation._trusted(tuple(range(a.degree)))
    base = a
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def conjugate(a: Permutation, by: Permutation) -> Permutation:
    """``by^-1 * a * by``: maps ``by(x)`` to ``by(a(x))``."""
    return compose(compose(inverse(by), a), by)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int) -> Permutation:
    """Parse 1-based cycle notation such as ``"(1 2 3)(4 5)"`` or ``"()"``.

    Entries inside a cycle may be separated by whitespace or commas.
    """
    if degree < 1:
        raise ValueError("degree must be at least 1")
    stripped = text.strip()
    if not stripped:
        raise ValueError("empty permutation text")
    pos = 0
    cycles = []
    for m in _CYCLE_RE.finditer(stripped):
        if stripped[pos:m.start()].strip():
            raise ValueError(f"malformed permutation {text!r}")
        pos = m.end()
        body = m.group(1).strip()
        if not body:
            cycles.append([])
            continue
        tokens = [t for t in re.split(r"[\s,]+", body) if t]
        try:
            points = [int(t) for t in tokens]
        except ValueError:
            raise ValueError(f"malformed permutation {text!r}") from None
        cycles.append(points)
    if pos == 0 or stripped[pos:].strip():
        raise ValueError(f"malformed permutation {text!r}")
    if any(not c for c in cycles) and len(cycles) > 1:
        raise ValueError(f"empty cycle inside product {text!r}")
    seen = set()
    images = list(range(degree))
    for cyc in cycles:
        for p in cyc:
            if p < 1 or p > degree:
                raise ValueError(f"point {p} outside 1..{degree}")
            if p in seen:
                raise ValueError(f"point {p} repeated in {text!r}")
            seen.add(p)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            images[a - 1] = b - 1
    return Permutation(images)


def format_permutation(p: Permutation) -> str:
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cycles)


@dataclass(frozen=True)
class OrbitSystem:
    """Orbit partition of the point set, blocks sorted by least point."""

    degree: int
    blocks: tuple[tuple[int, ...], ...]

    @property
    def block_size(self) -> int | None:
        sizes = {len(b) for b in self.blocks}
        return sizes.pop() if len(sizes) == 1 else None

    @property
    def is_transitive(self) -> bool:
        return len(self.blocks) == 1

    def block_of(self) -> list[int]:
        """``block_of()[x]`` is the index of the block containing x."""
        out = [0] * self.degree
        for i, b in enumerate(self.blocks):
            for x in b:
                out[x] = i
        return out


def orbits(generators: Iterable[Permutation | Sequence[int]], degree: int) -> OrbitSystem:
    """Orbits of the group generated by ``generators`` (union-find on images)."""
    parent = list(range(degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in generators:
        images = g.images if isinstance(g, Permutation) else g
        for i, v in enumerate(images):
            ri, rv = find(i), find(int(v))
            if ri != rv:
                parent[max(ri, rv)] = min(ri, rv)
    blocks: dict[int, list[int]] = {}
    for x in range(degree):
        blocks.setdefault(find(x), []).append(x)
    return OrbitSystem(degree, tuple(tuple(b) for b in sorted(blocks.values())))


def orbit_of(point: int, generators: Iterable[Sequence[int]]) -> set[int]:
    gens = [g.images if isinstance(g, Permutation) else g for g in generators]
    seen = {point}
    stack = [point]
    while stack:
        x = stack.pop()
        for g in gens:
            y = int(g[x])
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


class PermGroup:
    """A permutation group given by generators, with a cached closure.

    The closure (``elements``) is computed on first use, sorted
    lexicographically by image tuple, and refused beyond ``cap`` elements.
    Derived structural data (subgroup lattice etc.) is memoized in
    ``self.cache`` by the other modules.
    """

    def __init__(
        self,
        generators: Iterable[Permutation] = (),
        degree: int | None = None,
        *,
        cap: int | None = None,
        elements: np.ndarray | None = None,
    ):
        gens = tuple(g if isinstance(g, Permutation) else Permutation(g) for g in generators)
        if degree is None:
            if not gens:
                raise ValueError("degree required for an empty generating set")
            degree = gens[0].degree
        if degree < 1:
            raise ValueError("degree must be at least 1")
        for g in gens:
            if g.degree != degree:
                raise ValueError(f"generator {g} has degree {g.degree}, expected {degree}")
        self.degree = degree
        self.generators = tuple(g for g in gens if not g.is_identity())
        self.cap = cap if cap is not None else order_cap()
        self.cache: dict = {}
        if elements is not None:
            arr = np.asarray(elements, dtype=np.int32).reshape(-1, degree)
            self.__dict__["array"] = _sorted_rows(arr)

    @classmethod
    def from_elements(cls, rows, degree: int, generators: Iterable[Permutation] | None = None):
        """Wrap a known closed set of image rows (no closure computation)."""
        rows = np.asarray(rows, dtype=np.int32).reshape(-1, degree)
        if generators is None:
            generators = _greedy_generators(rows, degree)
        return cls(generators, degree, elements=rows)

    @cached_property
    def array(self) -> np.ndarray:
        """``(order, degree)`` int32 array of elements in sorted order."""
        if not self.generators:
            return np.arange(self.degree, dtype=np.int32).reshape(1, self.degree)
        gens = np.array([g.images for g in self.generators], dtype=np.int32)
        rows = kernels.perm_closure(gens, self.degree, self.cap)
        if rows is None:
            raise BoundExceeded(f"group closure exceeds order cap {self.cap}")
        return _sorted_rows(rows)

    @cached_property
    def elements(self) -> tuple[Permutation, ...]:
        return tuple(Permutation._trusted(tuple(r)) for r in self.array.tolist())

    @cached_property
    def index(self) -> dict[tuple, int]:
        return {p.images: i for i, p in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.array)

    def __len__(self) -> int:
        return self.order

    def __contains__(self, p: Permutation) -> bool:
        return p.images in self.index

    def index_of(self, p: Permutation | Sequence[int]) -> int:
        key = p.images if isinstance(p, Permutation) else tuple(int(v) for v in p)
        try:
            return self.index[key]
        except KeyError:
            raise ValueError(f"{p} is not an element of the group") from None

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    @cached_property
    def mul(self) -> np.ndarray:
        """Cayley table: ``mul[i, j]`` is the index of ``elements[i] * elements[j]``."""
        n = self.order
        if n > table_cap():
            raise BoundExceeded(f"Cayley table for order {n} exceeds bound {table_cap()}")
        arr = self.array
        lookup = {row.tobytes(): i for i, row in enumerate(arr)}
        gens = [self.index_of(g) for g in self.generators]
        gen_cols = []
        for gi in gens:
            prod = arr[gi][arr]  # row e -> e * g
            gen_cols.append(np.fromiter((lookup[r.tobytes()] for r in prod), dtype=np.int32, count=n))
        table = np.empty((n, n), dtype=np.int32)
        table[:, 0] = np.arange(n, dtype=np.int32)
        done = np.zeros(n, dtype=bool)
        done[0] = True
        frontier = [0]
        while frontier:
            nxt = []
            for k in frontier:
                col = table[:, k]
                for s, gcol in enumerate(gen_cols):
                    j = gcol[k]
                    if not done[j]:
                        table[:, j] = gcol[col]
                        done[j] = True
                        nxt.append(j)
            frontier = nxt
        return table

    @cached_property
    def inv(self) -> np.ndarray:
        return np.argmax(self.mul == 0, axis=1).astype(np.int32)

    def orbits(self) -> OrbitSystem:
        return orbits(self.generators, self.degree)

    def is_transitive(self) -> bool:
        return self.orbits().is_transitive

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.order == other.order
            and bool(np.array_equal(self.array, other.array))
        )

    def __hash__(self) -> int:
        return hash((self.degree, self.order, self.array[-1].tobytes()))

    def __repr__(self) -> str:
        gens = ", ".join(format_permutation(g) for g in self.generators) or "()"
        return f"PermGroup(degree={self.degree}, gens=[{gens}])"


def _sorted_rows(rows: np.ndarray) -> np.ndarray:
    order = np.lexsort(rows.T[::-1])
    return np.ascontiguousarray(rows[order], dtype=np.int32)


def _greedy_generators(rows: np.ndarray, degree: int) -> list[Permutation]:
    """Pick generators from ``rows`` in order until they generate all of it."""
    target = len(rows)
    gens: list[Permutation] = []
    have: set[tuple] = {tuple(range(degree))}
    for r in rows.tolist():
        t = tuple(r)
        if t in have:
            continue
        gens.append(Permutation._trusted(t))
        closure = kernels.perm_closure(np.array([g.images for g in gens], dtype=np.int32), degree, target)
        have = {tuple(x) for x in closure.tolist()}
        if len(have) == target:
            break
    return gens


def group_closure(generators: Sequence[Permutation], degree: int | None = None, cap: int | None = None) -> PermGroup:
    """Generate a group and force its closure eagerly."""
    G = PermGroup(generators, degree, cap=cap)
    G.array  # noqa: B018 - closure raises here if over the cap
    return G


def orbits_and_transitivity(G: PermGroup) -> tuple[OrbitSystem, bool]:
    system = G.orbits()
    return system, system.is_transitive
