"""Exact linear algebra: frozen examples and algebraic laws."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wittartin.exactlin import (
    BilinearForm,
    Matrix,
    NotContained,
    NotPositiveDefinite,
    Subspace,
    gram_on,
    identity_form,
    intersect,
    is_direct_sum,
    kernel,
    orth_complement,
    sum_spaces,
)

F = Fraction


def span(n, *vectors):
    return Subspace.span(n, vectors)


class TestKernel:
    def test_identity_has_trivial_kernel(self):
        assert kernel(Matrix.identity(3)).dim == 0

    def test_zero_map_has_full_kernel(self):
        assert kernel(Matrix.zeros(2, 3)) == Subspace.full(3)

    def test_projection_kernel_is_e3(self):
        # Hand row-reduction: x1 = x2 = 0, x3 free.
        A = Matrix.from_rows([[1, 0, 0], [0, 1, 0]])
        assert kernel(A) == span(3, (0, 0, 1))

    def test_rank_nullity_concrete(self):
        A = Matrix.from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
        assert kernel(A).dim + A.rank() == 3


class TestOrthComplement:
    def test_standard_orthogonality(self):
        U = span(2, (1, 0))
        W = Subspace.full(2)
        assert orth_complement(U, W, identity_form(2)) == span(2, (0, 1))

    def test_u_equals_w(self):
        U = span(2, (1, 1))
        assert orth_complement(U, U, identity_form(2)).dim == 0

    def test_weighted_complement(self):
        # <u, v>_ip = 0 with ip = diag(1,2): v1 + 2 v2 = 0, so v = (2, -1).
        U = span(2, (1, 1))
        ip = BilinearForm(Matrix.from_rows([[1, 0], [0, 2]]))
        result = orth_complement(U, Subspace.full(2), ip)
        assert result == span(2, (2, -1))

    def test_not_contained(self):
        with pytest.raises(NotContained):
            orth_complement(span(2, (1, 0)), span(2, (0, 1)),
                            identity_form(2))

    def test_not_positive_definite(self):
        bad = BilinearForm(Matrix.from_rows([[1, 0], [0, -1]]))
        with pytest.raises(NotPositiveDefinite):
            orth_complement(span(2, (1, 0)), Subspace.full(2), bad)


class TestSumIntersect:
    def test_axes_direct_sum(self):
        U, V = span(3, (1, 0, 0)), span(3, (0, 1, 0))
        assert is_direct_sum([U, V])
        assert sum_spaces(U, V) == span(3, (1, 0, 0), (0, 1, 0))

    def test_skew_lines_trivial_intersection(self):
        U, V = span(2, (1, 0)), span(2, (1, 1))
        assert intersect(U, V).dim == 0
        assert is_direct_sum([U, V])

    def test_overlapping_planes(self):
        U = span(3, (1, 0, 0), (0, 1, 0))
        V = span(3, (0, 1, 0), (0, 0, 1))
        assert intersect(U, V) == span(3, (0, 1, 0))
        assert not is_direct_sum([U, V])


class TestGramOn:
    def test_zero_dim_gives_empty(self):
        form = identity_form(3)
        g = gram_on(form, Subspace.zero(3))
        assert g.rows == 0 and g.cols == 0

    def test_symplectic_restriction(self):
        # "Standard" form pairing q_i with p_i in (q1, q2, p1, p2) order.
        J = Matrix.from_rows([
            [0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])
        form = BilinearForm(J)
        g = gram_on(form, span(4, (1, 0, 0, 0), (0, 0, 1, 0)))
        assert g == Matrix.from_rows([[0, 1], [-1, 0]])

    def test_identity_on_unit_vectors(self):
        g = gram_on(identity_form(3), Subspace.full(3))
        assert g == Matrix.identity(3)


class TestCanonicalForm:
    def test_equality_independent_of_spanning_set(self):
        a = span(3, (1, 2, 3), (0, 1, 1))
        b = span(3, (1, 3, 4), (2, 5, 7), (1, 2, 3))
        assert a == b

    def test_determinism(self):
        vs = [(F(1, 2), F(2), F(-1)), (F(3), F(0), F(1, 3))]
        assert Subspace.span(3, vs) == Subspace.span(3, vs)

    def test_pivot_normalization(self):
        s = span(2, (2, -1))
        assert s.basis.col(0) == (F(1), F(-1, 2))


small_fracs = st.builds(F, st.integers(-4, 4), st.integers(1, 3))


def matrices(rows, cols):
    return st.lists(
        st.lists(small_fracs, min_size=cols, max_size=cols),
        min_size=rows, max_size=rows,
    ).map(Matrix.from_rows)


@settings(max_examples=60, deadline=None)
@given(matrices(3, 4))
def test_rank_nullity(A):
    assert kernel(A).dim + A.rank() == A.cols


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small_fracs, min_size=3, max_size=3),
                min_size=1, max_size=4),
       st.lists(st.lists(small_fracs, min_size=3, max_size=3),
                min_size=1, max_size=4))
def test_sum_intersect_laws(us, vs):
    U = Subspace.span(3, us)
    V = Subspace.span(3, vs)
    assert sum_spaces(U, V) == sum_spaces(V, U)
    assert intersect(U, V) == intersect(V, U)
    assert intersect(U, sum_spaces(U, V)) == U
    assert sum_spaces(U, intersect(U, V)) == U


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small_fracs, min_size=4, max_size=4),
                min_size=1, max_size=3),
       st.lists(st.lists(small_fracs, min_size=4, max_size=4),
                min_size=1, max_size=3),
       st.lists(st.lists(small_fracs, min_size=4, max_size=4),
                min_size=1, max_size=3))
def test_modular_law(us, vs, extra):
    # U <= W by construction: W is spanned by U's vectors plus extra ones.
    U = Subspace.span(4, us)
    V = Subspace.span(4, vs)
    W = Subspace.span(4, us + extra)
    assert intersect(sum_spaces(U, V), W) == sum_spaces(U, intersect(V, W))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small_fracs, min_size=4, max_size=4),
                min_size=1, max_size=3),
       st.lists(st.lists(small_fracs, min_size=4, max_size=4),
                min_size=1, max_size=3))
def test_orth_complement_splits(us, extra):
    U = Subspace.span(4, us)
    W = Subspace.span(4, us + extra)
    C = orth_complement(U, W, identity_form(4))
    assert is_direct_sum([U, C])
    assert sum_spaces(U, C) == W
