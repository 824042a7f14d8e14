import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ecshare.agcode import (
    CodeError,
    EnumerationCapExceeded,
    LinearCode,
    UnsupportedParameters,
    codewords,
    dual_code,
    functional_code,
    matmul,
    min_distance,
    min_weight_where,
    null_space,
    rank,
    rr_basis,
    rref,
    solve,
    vandermonde_code,
    weight_distribution,
)
from ecshare.curve import INFINITY, CurveSpec, Point, enumerate_points
from ecshare.field import GF
from oracles import SlowField, all_words

EX1 = CurveSpec(GF(7), a4=5, a6=4)
SS8 = CurveSpec(GF(2, 3), a3=1)


def affine(c):
    return [p for p in enumerate_points(c) if not p.is_infinity]


@pytest.mark.parametrize("m,monos", [(1, [(0, 0)]), (2, [(0, 0), (1, 0)]), (3, [(0, 0), (1, 0), (0, 1)]),
                                     (5, [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1)])])
def test_riemann_roch_basis(m, monos):
    b = rr_basis(m)
    assert list(b.monomials) == monos
    assert len(b.monomials) == m  # dim L(mO) = m for m >= 1 on genus 1
    assert max(b.pole_orders()) <= m


@pytest.mark.parametrize("c", [EX1, SS8, CurveSpec(GF(11), a4=1, a6=3), CurveSpec(GF(3, 2), a2=1, a6=1)])
def test_functional_and_dual_dimensions(c):
    pts = affine(c)
    for m in range(1, len(pts)):
        CL = functional_code(c, m, pts)
        CO = dual_code(CL)
        assert CL.dimension == m
        assert CO.dimension == len(pts) - m
        prod = matmul(c.field, CL.rows(), np.array(CO.rows()).T.tolist())
        assert not np.any(prod)


def test_example1_residue_code_by_brute_force():
    D = [Point(3, 2), Point(2, 6), Point(0, 5), Point(0, 2), Point(2, 1)]
    CO = dual_code(functional_code(EX1, 3, D))
    F = EX1.field
    slow = SlowField(7, 1, F.modulus)
    words = all_words(slow, CO.rows())
    assert sorted(map(tuple, codewords(CO).tolist())) == sorted(words)
    nonzero = [w for w in words if any(w)]
    assert min_distance(CO) == min(sum(1 for x in w if x) for w in nonzero) == 4
    assert min_weight_where(CO, False) == min(sum(1 for x in w[1:] if x) for w in nonzero) == 3
    assert min_weight_where(CO, True) == min(sum(1 for x in w[1:] if x) for w in nonzero if w[0]) == 3


@pytest.mark.parametrize("p,n,k", [(7, 6, 2), (7, 6, 3), (11, 8, 4), (11, 10, 5), (5, 4, 2)])
def test_reed_solomon_is_mds(p, n, k):
    F = GF(p)
    code = vandermonde_code(F, list(range(1, n + 1)), k)
    assert min_distance(code) == n - k + 1
    assert min_distance(dual_code(code)) == k + 1
    dist = weight_distribution(code)
    assert sum(dist) == p**k
    assert dist[0] == 1 and all(d == 0 for d in dist[1 : n - k + 1])


@settings(max_examples=50, deadline=None)
@given(
    st.sampled_from([(2, 2), (3, 1), (5, 1), (2, 3)]).flatmap(
        lambda pr: st.tuples(
            st.just(GF(*pr)),
            st.lists(st.lists(st.integers(0, pr[0] ** pr[1] - 1), min_size=5, max_size=5), min_size=1, max_size=4),
        )
    )
)
def test_rref_null_space_and_solve(args):
    F, M = args
    R, piv = rref(F, M)
    assert len(R) == rank(F, M)
    for i, c in enumerate(piv):
        assert R[i][c] == 1 and all(R[j][c] == 0 for j in range(len(R)) if j != i)
    N = null_space(F, M, 5)
    assert len(N) == 5 - len(R)
    for v in N:
        assert all(row == [0] for row in matmul(F, M, [[t] for t in v]))
    # solve M^T x = b for a b known to be in the row space
    b = [0] * 5
    for row in M:
        b = [F.add(x, y) for x, y in zip(b, row)]
    x = solve(F, np.array(M).T.tolist(), b)
    assert x is not None
    back = [0] * 5
    for xi, row in zip(x, M):
        back = [F.add(u, F.mul(xi, v)) for u, v in zip(back, row)]
    assert back == b


def test_linear_code_equality_is_by_span():
    F = GF(5)
    a = LinearCode(F, np.array([[1, 0, 2], [0, 1, 3]]))
    b = LinearCode(F, np.array([[1, 1, 0], [2, 1, 2]]))
    assert a == b and hash(a) == hash(b)
    assert a.contains([1, 1, 0]) and not a.contains([1, 1, 1])
    assert a.encode([1, 1]) == [1, 1, 0]


def test_code_errors():
    F = GF(5)
    with pytest.raises(CodeError):
        LinearCode(F, np.array([[1, 2], [2, 4]]))
    with pytest.raises(CodeError):
        vandermonde_code(F, [1, 1, 2], 2)
    pts = affine(EX1)
    with pytest.raises(UnsupportedParameters):
        functional_code(EX1, len(pts), pts)
    with pytest.raises(CodeError):
        functional_code(EX1, 2, [INFINITY] + pts[:3])
    with pytest.raises(CodeError):
        functional_code(EX1, 2, pts[:3] + pts[:1])
    with pytest.raises(EnumerationCapExceeded):
        codewords(vandermonde_code(GF(11), list(range(11)), 6), cap=1000)
    with pytest.raises(CodeError):
        min_weight_where(LinearCode(F, np.array([[0, 1, 1]])), True)


def test_codeword_order_is_message_order():
    F = GF(3)
    code = LinearCode(F, np.array([[1, 0, 1], [0, 1, 1]]))
    words = codewords(code).tolist()
    expect = [code.encode(list(u)) for u in itertools.product(range(3), repeat=2)]
    assert words == expect
