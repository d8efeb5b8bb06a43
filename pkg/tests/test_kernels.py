"""Kernel backends: the compiled and pure implementations must agree
exactly, and the environment switch must select the pure one."""

import os
import subprocess
import sys

from hypothesis import given, settings, strategies as st

from tutteval import _kernels_py
from tutteval.exactnum import Rat
from tutteval.kernels import BACKEND, mul_poly, mul_trunc2, mul_trunc3

coeffs = st.builds(Rat,
                   st.integers(min_value=-50, max_value=50).filter(bool),
                   st.integers(min_value=1, max_value=7))

maps3 = st.dictionaries(
    st.tuples(st.integers(0, 6), st.integers(0, 4), st.integers(0, 4)),
    coeffs, max_size=8)
maps2 = st.dictionaries(
    st.tuples(st.integers(0, 6), st.integers(0, 5)), coeffs, max_size=8)
maps6 = st.dictionaries(
    st.tuples(*[st.integers(0, 4)] * 6), coeffs, max_size=8)


def test_backend_is_selected():
    assert BACKEND in ("cython", "python")


def test_pure_env_switch():
    env = dict(os.environ, TUTTEVAL_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c",
         "from tutteval.kernels import BACKEND; print(BACKEND)"],
        capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "python"


@given(maps3, maps3, st.integers(0, 12), st.integers(0, 8))
@settings(max_examples=60)
def test_trunc3_backends_agree(A, B, D, L):
    assert mul_trunc3(A, B, D, L) == _kernels_py.mul_trunc3(A, B, D, L)


@given(maps2, maps2, st.integers(0, 10), st.integers(0, 8))
@settings(max_examples=60)
def test_trunc2_backends_agree(A, B, S, L):
    assert mul_trunc2(A, B, S, L) == _kernels_py.mul_trunc2(A, B, S, L)


@given(maps6, maps6)
@settings(max_examples=60)
def test_poly_backends_agree(A, B):
    assert mul_poly(A, B) == _kernels_py.mul_poly(A, B)


def test_trunc3_examples():
    A = {(1, 0, 0): Rat(2)}
    B = {(0, 1, 0): Rat(3), (2, 0, 0): Rat(1)}
    assert mul_trunc3(A, B, 3, 2) == {(1, 1, 0): Rat(6), (3, 0, 0): Rat(2)}
    # truncation drops a + 2b over the cap
    assert mul_trunc3(A, B, 2, 2) == {}


def test_mul_poly_cancellation():
    A = {(1, 0, 0, 0, 0, 0): Rat(1), (0, 1, 0, 0, 0, 0): Rat(1)}
    B = {(1, 0, 0, 0, 0, 0): Rat(1), (0, 1, 0, 0, 0, 0): Rat(-1)}
    # (t+s)(t-s) = t^2 - s^2: the ts cross terms cancel and must vanish
    assert mul_poly(A, B) == {(2, 0, 0, 0, 0, 0): Rat(1),
                              (0, 2, 0, 0, 0, 0): Rat(-1)}
