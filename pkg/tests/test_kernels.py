import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hingen import _kernels_py, kernels
from hingen.textio import tree_digests

try:
    from hingen._ext import _kernels as _compiled
except ImportError:  # pragma: no cover - extension not built
    _compiled = None

needs_ext = pytest.mark.skipif(_compiled is None, reason="compiled kernels not built")


def _pairs(rng, n, m):
    a = rng.integers(0, n, size=m)
    b = rng.integers(0, n, size=m)
    keep = a != b
    return kernels.unique_pairs(a[keep], b[keep])


def test_python_typed_degrees_example():
    # 0-1, 0-2, 1-2 with types [0, 1, 1]
    d = kernels.typed_degrees([0, 0, 1], [1, 2, 2], [0, 1, 1], 2, impl=_kernels_py)
    assert d.tolist() == [[0, 2], [1, 1], [1, 1]]


def test_python_components_example():
    c = kernels.connected_components(6, [4, 1, 5], [2, 3, 4], impl=_kernels_py)
    assert c.tolist() == [0, 1, 2, 1, 2, 2]


def test_python_contract_example():
    lo, hi, et, idx = kernels.contract_edges(
        [0, 1, 2, 0], [2, 2, 3, 1], [0, 0, 1, 0], np.array([0, 0, 2, 3]), impl=_kernels_py
    )
    # 1 -> 0: edge 1-2 becomes a duplicate of 0-2, edge 0-1 becomes a self-loop
    assert lo.tolist() == [0, 2] and hi.tolist() == [2, 3]
    assert et.tolist() == [0, 1] and idx.tolist() == [0, 2]


def test_unique_pairs():
    a, b = kernels.unique_pairs([3, 1, 2, 1], [1, 3, 0, 3])
    assert list(zip(a.tolist(), b.tolist())) == [(0, 2), (1, 3)]


def test_backend_flag_matches_extension():
    forced = os.environ.get("HINGEN_PURE_PYTHON", "") in ("1", "true", "yes")
    expect = "cython" if _compiled is not None and not forced else "python"
    assert kernels.BACKEND == expect


def test_backends_write_identical_outputs(tmp_path):
    script = (
        "import sys; from hingen.presets import reference_graph; from hingen.reference import profile, estimate_params;"
        "from hingen.pipeline import generate; from hingen.export import write_outputs;"
        "prof = profile(reference_graph('imdb', n_targets=300, seed=1));"
        "write_outputs(generate(estimate_params(prof, seed=2), prof), sys.argv[1])"
    )
    digests = []
    for flag in ("0", "1"):
        out = tmp_path / flag
        subprocess.run([sys.executable, "-c", script, str(out)], check=True,
                       env=dict(os.environ, HINGEN_PURE_PYTHON=flag))
        d = tree_digests(out)
        d.pop("manifest.json")
        digests.append(d)
    assert digests[0] == digests[1]


@needs_ext
@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 200), m=st.integers(0, 600), k=st.integers(1, 5))
def test_backends_agree(seed, n, m, k):
    rng = np.random.default_rng(seed)
    a, b = _pairs(rng, n, m)
    types = rng.integers(0, k, size=n)
    np.testing.assert_array_equal(
        kernels.typed_degrees(a, b, types, k, impl=_kernels_py),
        kernels.typed_degrees(a, b, types, k, impl=_compiled),
    )
    np.testing.assert_array_equal(
        kernels.connected_components(n, a, b, impl=_kernels_py),
        kernels.connected_components(n, a, b, impl=_compiled),
    )
    src = rng.integers(0, n, size=m)
    dst = rng.integers(0, n, size=m)
    et = rng.integers(0, k, size=m)
    remap = np.arange(n)
    for drop in rng.choice(n, size=n // 3, replace=False):
        remap[drop] = rng.integers(0, n)
    remap = remap[remap]  # one level, like a resolved remap
    for x, y in zip(kernels.contract_edges(src, dst, et, remap, impl=_kernels_py),
                    kernels.contract_edges(src, dst, et, remap, impl=_compiled)):
        np.testing.assert_array_equal(x, y)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 80), m=st.integers(0, 200))
def test_components_are_min_id_partition(seed, n, m):
    rng = np.random.default_rng(seed)
    a, b = _pairs(rng, n, m)
    comp = kernels.connected_components(n, a, b)
    for u, v in zip(a.tolist(), b.tolist()):
        assert comp[u] == comp[v]
    for v in range(n):
        assert comp[v] <= v and comp[comp[v]] == comp[v]
