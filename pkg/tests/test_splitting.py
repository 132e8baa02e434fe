"""Validation and the subspace chain, against the worked rotation cases."""

from fractions import Fraction

import pytest

from instances import so3_case, so3xso3_diag, torus_instance, vec
from wittartin.exactlin import (
    BilinearForm,
    Matrix,
    Subspace,
    is_direct_sum,
    kernel,
    sum_spaces,
)
from wittartin.liecore import InnerProduct, abelian, so3, unit
from wittartin.splitting import (
    ProblemInstance,
    SliceRep,
    ValidationFailed,
    build_chain,
    dim_formulas,
    validate,
)

F = Fraction


def dims_of(inst):
    return build_chain(inst).dims()


class TestValidate:
    def test_clean_instance_passes(self):
        report = validate(so3_case("generic"))
        assert report.passed, report.failures()

    def test_gm_outside_stabilizer_fails(self):
        # ad*_{e3} e1* != 0, so span(e3) cannot stabilize e1*.
        inst = ProblemInstance(
            so3(), Subspace.span(3, [vec(1, 0, 0)]),
            Subspace.span(3, [vec(0, 0, 1)]), vec(1, 0, 0),
            InnerProduct(Matrix.identity(3)), SliceRep.trivial())
        report = validate(inst)
        failed = {c.name for c in report.failures()}
        assert "gm_in_g_mu" in failed

    def test_noninvariant_ip_fails(self):
        # <[e3,e1],e2> + <e1,[e3,e2]> = 2 - 1 with ip = diag(1,2,3).
        inst = ProblemInstance(
            so3(), Subspace.span(3, [vec(0, 0, 1)]),
            Subspace.span(3, [vec(0, 0, 1)]), vec(0, 0, 1),
            InnerProduct(Matrix.from_rows([[1, 0, 0], [0, 2, 0], [0, 0, 3]])),
            SliceRep(BilinearForm(Matrix.zeros(0, 0)), (Matrix.zeros(0, 0),)))
        report = validate(inst)
        failed = {c.name for c in report.failures()}
        assert "ip_ad_gm_invariant" in failed

    def test_build_chain_rejects_invalid(self):
        inst = ProblemInstance(
            so3(), Subspace.span(3, [vec(1, 0, 0)]),
            Subspace.span(3, [vec(0, 0, 1)]), vec(1, 0, 0),
            InnerProduct(Matrix.identity(3)), SliceRep.trivial())
        with pytest.raises(ValidationFailed):
            build_chain(inst)


class TestSo3Cases:
    def test_generic_dims(self):
        # Worked case: b = g_mu = span(mu), s = 0; a = h since h_mu = 0.
        d = dims_of(so3_case("generic"))
        assert (d["h_mu"], d["p"], d["b"], d["a"], d["s"], d["ntilde"],
                d["r"]) == (0, 0, 1, 1, 0, 0, 1)
        chain = build_chain(so3_case("generic"))
        assert chain.b == Subspace.span(3, [vec(0, 0, 1)])
        assert chain.a == Subspace.span(3, [vec(1, 0, 0)])

    def test_collinear_dims(self):
        # Worked case: s(G,H,mu) is a 2-dimensional plane, b = 0.
        d = dims_of(so3_case("collinear"))
        assert (d["h_mu"], d["b"], d["a"], d["s"], d["ntilde"], d["r"]) == \
            (1, 0, 0, 2, 0, 0)

    def test_zero_momentum_dims(self):
        # Worked case: b = complement of h in g, so dim b = 2; s = 0.
        d = dims_of(so3_case("zero"))
        assert (d["s"], d["b"], d["a"], d["ntilde"], d["r"]) == (0, 2, 0, 0, 0)

    def test_h_equals_g(self):
        inst = ProblemInstance(
            so3(), Subspace.full(3), Subspace.zero(3), vec(0, 0, 1),
            InnerProduct(Matrix.identity(3)), SliceRep.trivial())
        d = dims_of(inst)
        assert (d["s"], d["a"], d["b"]) == (0, 0, 0)
        assert d["q"] == 0


class TestTorus:
    @pytest.mark.parametrize("n,k", [(3, 1), (4, 2), (6, 5)])
    def test_abelian_dims(self, n, k):
        d = dims_of(torus_instance(n, k))
        assert d["s"] == 0 and d["a"] == 0 and d["b"] == n - k


class TestSo3xSo3:
    def test_diagonal_free_dims_against_rank_oracle(self):
        # Independent oracle: dimensions from brute-force kernel/rank
        # computations on the 6-dim algebra, before consulting the chain.
        inst = so3xso3_diag(with_gm=False)  # mu = (e3*, 2e3*)
        L, mu, h = inst.algebra, inst.mu, inst.h

        rows = [[sum(mu[k] * L.bracket(unit(6, i), unit(6, j))[k]
                     for k in range(6)) for i in range(6)] for j in range(6)]
        g_mu_dim = kernel(Matrix.from_rows(rows)).dim
        rows_h = [[sum(mu[k] * L.bracket(unit(6, i), eta)[k]
                       for k in range(6)) for i in range(6)]
                  for eta in h.basis_vectors()]
        hperp_dim = kernel(Matrix.from_rows(rows_h)).dim

        d = dims_of(inst)
        assert d["g_mu"] == g_mu_dim == 2
        assert d["h_perp_mu"] == hperp_dim == 4
        assert (d["h_mu"], d["p"], d["b"], d["a"], d["s"], d["ntilde"],
                d["r"]) == (1, 1, 1, 0, 2, 2, 0)

    def test_diagonal_with_stabilizer(self):
        d = dims_of(so3xso3_diag(with_gm=True))
        assert d["h_m"] == 1 and d["p"] == 0 and d["b"] == 1
        assert d["s"] == 2 and d["ntilde"] == 2 and d["r"] == 0


class TestDegenerateInputs:
    def test_h_zero(self):
        inst = ProblemInstance(
            so3(), Subspace.zero(3), Subspace.zero(3), vec(0, 0, 1),
            InnerProduct(Matrix.identity(3)), SliceRep.trivial())
        d = dims_of(inst)
        assert d["h_perp_mu"] == 3 and d["h_alpha"] == 0
        assert d["s"] == 2 and d["ntilde"] == 0 and d["r"] == 0

    def test_mu_zero_h_zero(self):
        inst = ProblemInstance(
            abelian(2), Subspace.zero(2), Subspace.zero(2), vec(0, 0),
            InnerProduct(Matrix.identity(2)), SliceRep.trivial())
        # For abelian g with h = 0: h_mu = 0, so p = 0 and b = g_mu = g.
        d = dims_of(inst)
        assert d["p"] == 0 and d["b"] == 2 and d["m"] == 2 and d["n"] == 0

    def test_gm_equals_g(self):
        from instances import full_stabilizer_instance
        d = dims_of(full_stabilizer_instance())
        assert d["m"] == 0 and d["n"] == 0


class TestShearedComplement:
    def test_r_is_chu_isotropic_even_when_plain_complement_is_not(self):
        # Opposite diagonal momenta + a skewed invariant product: the naive
        # orthogonal complement pairs nontrivially under the Chu form, so
        # this pins the isotropic-shear construction of r.
        from corpus import _sheared_r_instance
        from wittartin.exactlin import orth_complement, perp_under_form
        from wittartin.liecore import chu_form

        inst = _sheared_r_instance()
        chain = build_chain(inst)
        chu = chu_form(inst.algebra, inst.mu)
        assert chain.a.dim == 2 and chain.r.dim == 2

        V = perp_under_form(chu, sum_spaces(chain.ntilde, chain.s))
        pre = orth_complement(sum_spaces(chain.g_mu, chain.a), V,
                              inst.ip.form())
        pre_vs = pre.basis_vectors()
        assert any(chu(x, y) != 0 for x in pre_vs for y in pre_vs)

        r_vs = chain.r.basis_vectors()
        assert all(chu(x, y) == 0 for x in r_vs for y in r_vs)
        assert all(chu(x, y) == 0 for x in r_vs
                   for y in chain.ntilde.basis_vectors()
                   + chain.s.basis_vectors())


class TestChainIdentities:
    def test_eight_identities_on_mixed_instance(self):
        inst = so3xso3_diag(with_gm=True)
        chain = build_chain(inst)
        g = Subspace.full(6)
        assert sum_spaces(chain.h_m, chain.p) == chain.h_mu
        assert sum_spaces(chain.h_mu, chain.a) == chain.h_alpha
        assert sum_spaces(chain.g_mu, chain.a, chain.s) == chain.h_perp_mu_space
        assert sum_spaces(chain.h_alpha, chain.ntilde) == inst.h
        assert is_direct_sum([inst.gm, chain.m_space, chain.n_space])
        assert sum_spaces(inst.gm, chain.m_space, chain.n_space) == g

    def test_determinism(self):
        a = build_chain(so3xso3_diag(with_gm=True))
        b = build_chain(so3xso3_diag(with_gm=True))
        assert a == b


class TestDimFormulas:
    def test_generic_with_slice_dim_4(self):
        d = dim_formulas(build_chain(so3_case("generic", slice_dim=4)))
        assert d.slice_dim_H == 6

    def test_collinear_with_slice_dim_4(self):
        d = dim_formulas(build_chain(so3_case("collinear", slice_dim=4)))
        assert d.slice_dim_H == 6

    def test_h_equals_g_keeps_slice(self):
        inst = ProblemInstance(
            so3(), Subspace.full(3), Subspace.zero(3), vec(0, 0, 1),
            InnerProduct(Matrix.identity(3)),
            so3_case("generic", slice_dim=2).slice_rep)
        d = dim_formulas(build_chain(inst))
        assert d.slice_dim_H == 2
