from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lcplab.errors import InputError
from lcplab.linalg import (
    EigenSplit,
    Subspace,
    canonical_rows,
    charpoly_exact,
    coords_in_rowbasis,
    exact_det,
    exact_inverse,
    exact_solve,
    full_subspace,
    in_rowspan,
    make_subspace,
    matrix_rank,
    orthocomplement,
    rank_and_nullspace,
    restrict_operator,
    restricted_gram,
    selfadjoint_eigensplit,
    span_closure,
    subspace_contains,
    subspace_sum,
    subspaces_equal,
    symmetric_eigensplit,
    support_indices,
    zero_subspace,
)
from lcplab.scalars import DEFAULT_TOL, EXACT, FLOAT, exact_array, eye_array, float_array

F = Fraction


def E(rows):
    return exact_array(rows)


# ---------------------------------------------------------------------------
# rank / nullspace


def test_rank_one_matrix_exact():
    rank, null = rank_and_nullspace(E([[1, 1], [1, 1]]), EXACT)
    assert rank == 1
    assert null.dim == 1
    # nullspace is the line through (1, -1)
    v = null.basis[0]
    assert v[0] == -v[1] != 0


def test_rank_zero_matrix_both_modes():
    rank, null = rank_and_nullspace(E([[0, 0, 0, 0], [0, 0, 0, 0]]), EXACT)
    assert (rank, null.dim) == (0, 4)
    rank, null = rank_and_nullspace(np.zeros((2, 4)), FLOAT)
    assert (rank, null.dim) == (0, 4)


def test_rank_identity():
    rank, null = rank_and_nullspace(eye_array(3, EXACT), EXACT)
    assert (rank, null.dim) == (3, 0)


def test_rank_rejects_empty():
    with pytest.raises(InputError):
        rank_and_nullspace(np.zeros((0, 3)), FLOAT)


def test_float_rank_is_relative_to_scale():
    # a tiny but honest rank-2 matrix must not collapse to rank 1
    a = np.array([[1e-12, 0.0], [0.0, 2e-12]])
    assert matrix_rank(a, FLOAT, DEFAULT_TOL) == 2


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=2, max_size=4))
def test_rank_matches_between_backends(rows):
    a = np.array(rows, dtype=object)
    ae = E(rows)
    assert matrix_rank(ae, EXACT, DEFAULT_TOL) == matrix_rank(
        np.array(rows, dtype=np.float64), FLOAT, DEFAULT_TOL
    )


# ---------------------------------------------------------------------------
# solving and inverses


def test_exact_solve_unique():
    a = E([[2, 1], [1, 3]])
    b = E([5, 10])
    x = exact_solve(a, b)
    assert x is not None
    assert list(a @ x) == [F(5), F(10)]
    assert x[0] == F(1) and x[1] == F(3)


def test_exact_solve_inconsistent_returns_none():
    a = E([[1, 1], [1, 1]])
    assert exact_solve(a, E([1, 2])) is None


def test_exact_solve_underdetermined_particular():
    a = E([[1, 1]])
    x = exact_solve(a, E([7]))
    assert x is not None and x[0] + x[1] == 7


def test_exact_inverse_round_trip():
    a = E([[2, 1], [7, 4]])
    inv = exact_inverse(a)
    prod = a @ inv
    assert prod[0, 0] == 1 and prod[1, 1] == 1 and prod[0, 1] == 0 and prod[1, 0] == 0


def test_exact_inverse_rejects_singular():
    with pytest.raises(InputError):
        exact_inverse(E([[1, 2], [2, 4]]))


def test_exact_det():
    assert exact_det(E([[1, 2], [3, 4]])) == F(-2)
    assert exact_det(E([[1, 2], [2, 4]])) == F(0)
    assert exact_det(E([["1/2", 0], [0, "1/3"]])) == F(1, 6)


# ---------------------------------------------------------------------------
# characteristic polynomial (constant term first)


def test_charpoly_2x2():
    # X^2 - 3X + 1 for [[1,1],[1,2]]
    assert charpoly_exact(E([[1, 1], [1, 2]])) == (F(1), F(-3), F(1))


def test_charpoly_matches_det_and_trace():
    a = E([[2, 0, 1], [1, 1, 0], [0, 3, 1]])
    c = charpoly_exact(a)
    assert c[3] == 1
    assert c[2] == -(a[0, 0] + a[1, 1] + a[2, 2])
    assert c[0] == -exact_det(a)  # det(X I - a) at X = 0 is (-1)^n det a


# ---------------------------------------------------------------------------
# subspaces


def test_make_subspace_rejects_dependent_rows():
    with pytest.raises(InputError):
        make_subspace(E([[1, 0], [2, 0]]), 2, EXACT)


def test_subspace_equality_ignores_basis_choice():
    s1 = make_subspace(E([[1, 0], [0, 1]]), 2, EXACT)
    s2 = make_subspace(E([[1, 1], [1, -1]]), 2, EXACT)
    assert subspaces_equal(s1, s2)


def test_subspace_containment():
    plane = make_subspace(E([[1, 0, 0], [0, 1, 0]]), 3, EXACT)
    line = make_subspace(E([[2, 3, 0]]), 3, EXACT)
    off = make_subspace(E([[0, 0, 1]]), 3, EXACT)
    assert subspace_contains(plane, line, DEFAULT_TOL)
    assert not subspace_contains(plane, off, DEFAULT_TOL)
    assert subspace_contains(plane, zero_subspace(3, EXACT), DEFAULT_TOL)


def test_subspace_sum_direct_and_overlapping():
    a = make_subspace(E([[1, 0, 0]]), 3, EXACT)
    b = make_subspace(E([[0, 1, 0]]), 3, EXACT)
    s = subspace_sum([a, b])
    assert s.dim == 2
    with pytest.raises(InputError):
        subspace_sum([a, a])


def test_orthocomplement_euclidean_and_weighted():
    line = make_subspace(E([[1, 1]]), 2, EXACT)
    perp = orthocomplement(line, eye_array(2, EXACT))
    assert perp.dim == 1
    v = perp.basis[0]
    assert v[0] + v[1] == 0
    # with gram diag(1, 2) the complement of span{(1,1)} is span{(2,-1)}
    g = E([[1, 0], [0, 2]])
    perp_w = orthocomplement(line, g)
    w = perp_w.basis[0]
    assert w[0] * 1 + w[1] * 2 == 0


def test_orthocomplement_of_zero_is_everything():
    assert orthocomplement(zero_subspace(3, EXACT), eye_array(3, EXACT)).dim == 3


def test_coords_and_membership():
    basis = E([[1, 0, 0], [1, 1, 0]])
    c = coords_in_rowbasis(E([3, 2, 0]), basis, EXACT, DEFAULT_TOL)
    assert c is not None and list(c) == [F(1), F(2)]
    assert in_rowspan(E([3, 2, 0]), basis, EXACT, DEFAULT_TOL)
    assert not in_rowspan(E([0, 0, 1]), basis, EXACT, DEFAULT_TOL)


def test_restrict_operator_invariant_plane():
    # rotation-by-swap acts on span{e0, e1} inside R^3
    a = E([[0, -1, 0], [1, 0, 0], [0, 0, 5]])
    basis = E([[1, 0, 0], [0, 1, 0]])
    m = restrict_operator(a, basis, EXACT, DEFAULT_TOL)
    assert m is not None
    assert m[0, 0] == 0 and m[0, 1] == -1 and m[1, 0] == 1 and m[1, 1] == 0


def test_restrict_operator_detects_noninvariance():
    a = E([[0, 0], [1, 0]])
    basis = E([[1, 0]])
    assert restrict_operator(a, basis, EXACT, DEFAULT_TOL) is None


def test_restricted_gram():
    g = E([[2, 0], [0, 3]])
    basis = E([[1, 1]])
    assert restricted_gram(basis, g)[0, 0] == 5


def test_support_indices():
    rows = E([[0, 1, 0, 2], [0, 0, 0, 1]])
    assert support_indices(rows, EXACT, DEFAULT_TOL) == (1, 3)


def test_canonical_rows_exact_is_rref():
    rows = E([[2, 2], [0, 4]])
    can = canonical_rows(rows, EXACT, DEFAULT_TOL)
    assert can.shape == (2, 2)
    assert can[0, 0] == 1 and can[0, 1] == 0 and can[1, 0] == 0 and can[1, 1] == 1


# ---------------------------------------------------------------------------
# span closure


def _comm(a, b):
    return a @ b - b @ a


def test_span_closure_sl2_from_one_generator():
    # seed E12, step = bracket with E21; closure is all of sl(2)
    e12 = E([[0, 1], [0, 0]])
    e21 = E([[0, 0], [1, 0]])
    h = E([[1, 0], [0, -1]])
    out = span_closure([e12], lambda m: [_comm(e21, m)], EXACT)
    assert out.dim == 3
    for mat in (e12, e21, h):
        assert in_rowspan(mat.reshape(-1), out.basis, EXACT, DEFAULT_TOL)


def test_span_closure_stops_on_fixed_span():
    a = E([[1, 0], [0, 2]])
    out = span_closure([a], lambda m: [m], EXACT)
    assert out.dim == 1


def test_span_closure_float_agrees():
    e12 = float_array([[0, 1], [0, 0]])
    e21 = float_array([[0, 0], [1, 0]])
    out = span_closure([e12], lambda m: [_comm(e21, m)], FLOAT)
    assert out.dim == 3


def test_span_closure_rejects_empty_seed():
    with pytest.raises(InputError):
        span_closure([], lambda m: [], EXACT)


# ---------------------------------------------------------------------------
# eigensplitting


def test_symmetric_eigensplit_swap_exact():
    split = symmetric_eigensplit(E([[0, 1], [1, 0]]), EXACT)
    assert not split.promoted_to_float
    vals = [v for v, _ in split.pairs]
    assert vals == [F(-1), F(1)]
    for val, space in split.pairs:
        assert space.dim == 1
        v = space.basis[0]
        assert v[1] == val * v[0]


def test_symmetric_eigensplit_rejects_asymmetric():
    with pytest.raises(InputError):
        symmetric_eigensplit(E([[0, 1], [0, 0]]), EXACT)


def test_eigensplit_irrational_promotes():
    # eigenvalues (3 +- sqrt(5))/2 are irrational
    split = symmetric_eigensplit(E([[1, 1], [1, 2]]), EXACT)
    assert split.promoted_to_float
    vals = sorted(float(v) for v, _ in split.pairs)
    assert vals[0] == pytest.approx((3 - 5 ** 0.5) / 2)
    assert vals[1] == pytest.approx((3 + 5 ** 0.5) / 2)


def test_eigensplit_repeated_eigenvalue_block():
    m = E([[2, 0, 0], [0, 2, 0], [0, 0, 7]])
    split = symmetric_eigensplit(m, EXACT)
    dims = {float(v): s.dim for v, s in split.pairs}
    assert dims == {2.0: 2, 7.0: 1}


def test_selfadjoint_eigensplit_weighted_gram():
    # p is self-adjoint for gram diag(1,2): G p symmetric
    g = E([[1, 0], [0, 2]])
    p = E([[0, 2], [1, 0]])
    split = selfadjoint_eigensplit(p, g, EXACT)
    # eigenvalues of [[0,2],[1,0]] are +-sqrt(2): irrational, so promotion
    assert split.promoted_to_float
    fvals = sorted(float(v) for v, _ in split.pairs)
    assert fvals[0] == pytest.approx(-(2 ** 0.5))
    assert fvals[1] == pytest.approx(2 ** 0.5)


def test_selfadjoint_eigensplit_exact_rational_case():
    g = E([[2, 0], [0, 1]])
    p = E([[3, 0], [0, 5]])
    split = selfadjoint_eigensplit(p, g, EXACT)
    assert not split.promoted_to_float
    assert [v for v, _ in split.pairs] == [F(3), F(5)]


@settings(max_examples=40)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=3, max_size=3))
def test_float_eigensplit_reconstructs_operator(rows):
    a = np.array(rows, dtype=np.float64)
    m = (a + a.T) / 2.0
    try:
        split = symmetric_eigensplit(m, FLOAT)
    except Exception:
        return  # ambiguity band hit: acceptable for random input
    n = 3
    total = sum(s.dim for _, s in split.pairs)
    assert total == n
    # rebuild m from spectral data: sum of val * projector
    recon = np.zeros((n, n))
    for val, space in split.pairs:
        b = np.asarray(space.basis, dtype=np.float64)
        # rows are orthonormal up to the gram (here identity)
        q, _ = np.linalg.qr(b.T)
        recon += val * (q @ q.T)
    scale = max(1.0, float(np.max(np.abs(m))))
    assert float(np.max(np.abs(recon - m))) < 1e-8 * scale


def test_full_subspace_roundtrip():
    s = full_subspace(4, FLOAT)
    assert s.dim == 4 and s.ambient_dim == 4
    assert subspaces_equal(s, make_subspace(np.eye(4), 4, FLOAT))
