import os
import subprocess
import sys

import numpy as np
import pytest

from mtgroups import _pykernels, kernels
from mtgroups.catalog import default_catalog
from mtgroups.structure import all_subgroups

compiled = pytest.importorskip("mtgroups._kernels")

CATALOG = default_catalog(60)


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


def test_pure_env_forces_python():
    code = "from mtgroups import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, MTGROUPS_PURE="1")
    r = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert r.stdout.strip() == "python"


@pytest.mark.parametrize("entry", CATALOG, ids=lambda e: e.name)
def test_perm_closure_parity(entry):
    G = entry.group
    gens = np.array([g.images for g in G.generators], dtype=np.int32).reshape(-1, G.degree)
    a = compiled.perm_closure(gens, G.degree, 10 ** 6)
    b = _pykernels.perm_closure(gens, G.degree, 10 ** 6)
    assert sorted(map(tuple, a.tolist())) == sorted(map(tuple, b.tolist()))
    if G.order > 1:
        assert compiled.perm_closure(gens, G.degree, G.order - 1) is None
        assert _pykernels.perm_closure(gens, G.degree, G.order - 1) is None


@pytest.mark.parametrize("entry", CATALOG, ids=lambda e: e.name)
def test_table_kernels_parity(entry):
    G = entry.group
    mul = G.mul
    for H in all_subgroups(G)[:40]:
        idx = np.array(H.indices, dtype=np.int32)
        la, ra = compiled.coset_labels(mul, idx)
        lb, rb = _pykernels.coset_labels(mul, idx)
        assert np.array_equal(la, lb) and np.array_equal(ra, rb)
        nl = G.order // H.order
        probe = np.arange(0, G.order, 2, dtype=np.int32)
        assert compiled.distinct_count(la, probe, nl) == _pykernels.distinct_count(lb, probe, nl)
        gens = idx[:2]
        seed = np.array([0], dtype=np.int32)
        assert np.array_equal(compiled.table_closure(mul, seed, gens), _pykernels.table_closure(mul, seed, gens))


def test_lehmer_parity():
    rng = np.random.default_rng(3)
    perms = np.array([rng.permutation(7) for _ in range(200)], dtype=np.int32)
    a = compiled.lehmer_ranks(perms)
    b = _pykernels.lehmer_ranks(perms)
    assert np.array_equal(a, b)
    assert len(set(a.tolist())) == len({tuple(p) for p in perms.tolist()})
    ident = np.arange(5, dtype=np.int32).reshape(1, 5)
    assert compiled.lehmer_ranks(ident)[0] == 0
    assert compiled.lehmer_ranks(ident[:, ::-1].copy())[0] == 119
