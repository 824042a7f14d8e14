import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ecshare import kernels
from ecshare.field import GF

py = kernels.python_backend
cy = kernels.compiled_backend

needs_ext = pytest.mark.skipif(cy is None, reason="compiled extension not built")


@st.composite
def generators(draw):
    p, r = draw(st.sampled_from([(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (7, 1)]))
    F = GF(p, r)
    k = draw(st.integers(1, 3))
    n = draw(st.integers(k, 7))
    gen = np.array(draw(st.lists(st.lists(st.integers(0, F.q - 1), min_size=n, max_size=n), min_size=k, max_size=k)),
                   dtype=np.uint8)
    return F, gen


def test_default_backend():
    expected = "python" if cy is None or os.environ.get("ECSHARE_PURE_PYTHON") else "cython"
    assert kernels.BACKEND == expected


@needs_ext
@settings(max_examples=120, deadline=None)
@given(generators(), st.integers(0, 1), st.booleans())
def test_backends_agree(Fgen, start, c0):
    F, gen = Fgen
    assert np.array_equal(py.codewords(gen, F.add_table, F.mul_table), cy.codewords(gen, F.add_table, F.mul_table))
    assert py.min_weight(gen, F.add_table, F.mul_table, start, c0) == cy.min_weight(
        gen, F.add_table, F.mul_table, start, c0
    )
    target = (np.arange(gen.shape[1]) * 3 % F.q).astype(np.uint8)[start:]
    dp, hp = py.nearest(gen, F.add_table, F.mul_table, target, start)
    dc, hc = cy.nearest(gen, F.add_table, F.mul_table, target, start)
    assert dp == dc and list(hp) == list(hc)
    args = (gen, F.add_table, F.mul_table, F.neg_table, F.inv_table)
    assert np.array_equal(py.qualified_flags(*args), cy.qualified_flags(*args))


@needs_ext
def test_backends_agree_on_fixture_schemes(schemes):
    for s in schemes.values():
        F, gen = s.field, s.sharing_code.generator
        args = (gen, F.add_table, F.mul_table, F.neg_table, F.inv_table)
        assert np.array_equal(py.qualified_flags(*args), cy.qualified_flags(*args))
        assert py.min_weight(gen, F.add_table, F.mul_table, 1, True) == cy.min_weight(
            gen, F.add_table, F.mul_table, 1, True
        )


def test_pure_python_switch():
    code = "import ecshare.kernels as k; print(k.BACKEND)"
    env = dict(os.environ, ECSHARE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
