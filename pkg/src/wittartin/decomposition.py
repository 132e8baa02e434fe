"""Both tangent-space decompositions and the compatible slice.

decompose_G splits the model into T0, T1, N0, N1 for the full algebra;
decompose_H produces the subalgebra counterpart whose slice block is

    NH1 = s*m  +  (b*m + Y_m)  +  N1,

together with the block form on it and the quadratic momentum map of the
h_m-action.  Every claimed identity is checked exactly and a failure
raises ChainInconsistent with the index of the first broken assertion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactlin import (
    BilinearForm,
    Matrix,
    Subspace,
    Vec,
    ZERO,
    dot,
    gram_on,
    is_direct_sum,
    kernel,
    sum_spaces,
    unit_vec,
)
from .liecore import chu_form
from .pointmodel import (
    TangentModel,
    inf_action,
    ker_dphi_G,
    ker_dphi_H,
)
from .splitting import Check


class ChainInconsistent(AssertionError):
    """A decomposition assertion failed; `index` names which one."""

    def __init__(self, index: int, message: str):
        self.index = index
        super().__init__(f"assertion {index}: {message}")


@dataclass(frozen=True)
class WittDecompositionG:
    T0: Subspace
    T1: Subspace
    N0: Subspace
    N1: Subspace
    gram_T1: Matrix
    gram_N1: Matrix


@dataclass(frozen=True)
class WittDecompositionH:
    TH0: Subspace
    TH1: Subspace
    NH0: Subspace
    NH1: Subspace
    s_block: Subspace
    Xm_block: Subspace
    N1_block: Subspace
    Ym: Subspace
    Zm: Subspace
    # Model coordinate indices of the NH1 blocks, in report order.
    nh1_indices: tuple[int, ...]


def _image_under_action(model: TangentModel, space: Subspace) -> Subspace:
    vectors = [inf_action(model, v).coords() for v in space.basis_vectors()]
    return Subspace.span(model.total_dim, vectors)


def _unit_span(model: TangentModel, indices) -> Subspace:
    return Subspace.span(
        model.total_dim, [unit_vec(model.total_dim, i) for i in indices])


def _cross_gram(model: TangentModel, U: Subspace, V: Subspace) -> Matrix:
    return U.basis.transpose() @ model.omega.gram @ V.basis


def decompose_G(model: TangentModel) -> WittDecompositionG:
    chain = model.chain
    T0 = _image_under_action(model, chain.m_space)
    T1 = _image_under_action(model, chain.n_space)
    N0 = _unit_span(model, list(model.blocks["pstar"]) + list(model.blocks["bstar"]))
    N1 = _unit_span(model, model.blocks["N1"])

    full = Subspace.full(model.total_dim)
    assert is_direct_sum([T0, T1, N0, N1])
    assert sum_spaces(T0, T1, N0, N1) == full
    assert sum_spaces(T0, N1) == ker_dphi_G(model)
    assert _cross_gram(model, T1, N1).is_zero()
    T0N0 = sum_spaces(T0, N0)
    assert _cross_gram(model, T1, T0N0).is_zero()
    assert _cross_gram(model, N1, T0N0).is_zero()
    assert gram_on(model.omega, T0).is_zero()
    assert gram_on(model.omega, N0).is_zero()
    assert T0.dim == N0.dim
    assert gram_on(model.omega, T0N0).rank() == T0N0.dim

    gram_T1 = gram_on(model.omega, T1)
    # The form on the orbit directions is the Chu pairing of the n basis:
    # T1's canonical basis vectors are the model units at the n positions,
    # which correspond to the concatenated (a, s, ntilde, r) columns.
    chu = chu_form(model.inst.algebra, model.inst.mu)
    n_indices = [i for name in ("a", "s", "ntilde", "r")
                 for i in model.blocks[name]]
    n_cols = [model.mn_basis.col(i) for i in n_indices]
    kks = Matrix.from_rows(
        [[chu(x, y) for y in n_cols] for x in n_cols], cols=len(n_cols))
    assert gram_T1 == kks
    gram_N1 = gram_on(model.omega, N1)
    assert gram_N1 == model.inst.slice_rep.omega.gram

    return WittDecompositionG(T0=T0, T1=T1, N0=N0, N1=N1,
                              gram_T1=gram_T1, gram_N1=gram_N1)


def eq_M_subspace(model: TangentModel) -> Subspace:
    """The subspace M of T1 + N0, computed directly from its definition:

        M = { z_M(m) + w : -ad*_z mu + f(w) annihilates h }.

    This is the independent route against which the constructive identity
    ker dphi_H = ker dphi_G + M is checked.
    """
    L = model.inst.algebra
    n_indices = [i for name in ("a", "s", "ntilde", "r")
                 for i in model.blocks[name]]
    r_indices = list(model.blocks["pstar"]) + list(model.blocks["bstar"])
    local = n_indices + r_indices

    h_vectors = model.inst.h.basis_vectors()
    rows = []
    for eta in h_vectors:
        row = []
        for i in n_indices:
            z = model.mn_basis.col(i)  # U index == mn column index
            row.append(-dot(model.inst.mu, L.bracket(z, eta)))
        for j in range(model.dim_m):
            row.append(dot(model.dual_row(model.gm_dim + j), eta))
        rows.append(tuple(row))
    constraint = Matrix.from_rows(rows, cols=len(local))
    ker = kernel(constraint)
    vectors = []
    for c in ker.basis_vectors():
        v = [ZERO] * model.total_dim
        for pos, idx in enumerate(local):
            v[idx] = c[pos]
        vectors.append(tuple(v))
    return Subspace.span(model.total_dim, vectors)


def _build_h_parts(model: TangentModel) -> WittDecompositionH:
    chain = model.chain
    TH0 = _image_under_action(model, chain.h_alpha)
    TH1 = _image_under_action(model, chain.ntilde)
    s_block = _image_under_action(model, chain.s)
    b_block = _image_under_action(model, chain.b)
    Ym = _unit_span(model, model.blocks["bstar"])
    Xm = sum_spaces(b_block, Ym)
    N1_block = _unit_span(model, model.blocks["N1"])
    NH1 = sum_spaces(s_block, Xm, N1_block)
    NH0 = sum_spaces(_unit_span(model, model.blocks["pstar"]),
                     _image_under_action(model, chain.r))
    Zm = sum_spaces(_image_under_action(model, chain.a),
                    _image_under_action(model, chain.r))
    nh1_indices = tuple(
        list(model.blocks["s"]) + list(model.blocks["b"])
        + list(model.blocks["bstar"]) + list(model.blocks["N1"]))
    return WittDecompositionH(
        TH0=TH0, TH1=TH1, NH0=NH0, NH1=NH1,
        s_block=s_block, Xm_block=Xm, N1_block=N1_block,
        Ym=Ym, Zm=Zm, nh1_indices=nh1_indices,
    )


def h_decomposition_checks(decomp: WittDecompositionH,
                           model: TangentModel) -> list[Check]:
    """The seven assertion groups for the H-side decomposition."""
    chain = model.chain
    chu = chu_form(model.inst.algebra, model.inst.mu)
    full = Subspace.full(model.total_dim)
    out: list[Check] = []

    def record(name, passed, detail=""):
        out.append(Check(name, passed, detail))

    record("wittH.1_direct_sum",
           is_direct_sum([decomp.TH0, decomp.TH1, decomp.NH0, decomp.NH1])
           and sum_spaces(decomp.TH0, decomp.TH1, decomp.NH0, decomp.NH1)
           == full)
    record("wittH.2_TH0_NH1_is_ker_dphiH",
           sum_spaces(decomp.TH0, decomp.NH1) == ker_dphi_H(model))

    M = eq_M_subspace(model)
    kerG = ker_dphi_G(model)
    qm = sum_spaces(_image_under_action(model, chain.a),
                    _image_under_action(model, chain.s))
    record("wittH.3_ker_split_with_M",
           is_direct_sum([kerG, M])
           and sum_spaces(kerG, M) == ker_dphi_H(model)
           and M == sum_spaces(qm, decomp.Ym))

    TH0NH0 = sum_spaces(decomp.TH0, decomp.NH0)
    ortho = (
        _cross_gram(model, decomp.TH1, decomp.NH1).is_zero()
        and _cross_gram(model, decomp.TH1, TH0NH0).is_zero()
        and _cross_gram(model, decomp.NH1, TH0NH0).is_zero()
    )
    lagrangian = (
        gram_on(model.omega, decomp.TH0).is_zero()
        and gram_on(model.omega, decomp.NH0).is_zero()
        and decomp.TH0.dim == decomp.NH0.dim
        and gram_on(model.omega, TH0NH0).rank() == TH0NH0.dim
    )
    record("wittH.4_orthogonality_and_lagrangian", ortho and lagrangian)

    nondeg = all(
        gram_on(model.omega, space).rank() == space.dim
        for space in (decomp.s_block, decomp.Xm_block, decomp.NH1, decomp.Zm)
    )
    record("wittH.5_symplectic_blocks", nondeg)

    avs = chain.a.basis_vectors()
    rvs = chain.r.basis_vectors()
    pairing_ok = len(avs) == len(rvs)
    if pairing_ok and avs:
        P = Matrix.from_rows([[chu(x, y) for y in rvs] for x in avs],
                             cols=len(rvs))
        pairing_ok = P.rank() == len(avs)
    record("wittH.6_a_r_pairing_nondegenerate", pairing_ok)

    record("wittH.7_a_orbit_lagrangian_in_Zm",
           all(chu(x, y) == 0 for x in avs for y in avs))
    return out


def decompose_H(model: TangentModel) -> WittDecompositionH:
    decomp = _build_h_parts(model)
    for i, check in enumerate(h_decomposition_checks(decomp, model), start=1):
        if not check.passed:
            raise ChainInconsistent(i, check.name)
    return decomp


def slice_form(decomp: WittDecompositionH, model: TangentModel) -> BilinearForm:
    """Form on NH1 in the block basis (s, b, Y_m, N1); exactly block diagonal."""
    idx = decomp.nh1_indices
    g = model.omega.gram
    gram = Matrix.from_rows(
        [[g.entries[i][j] for j in idx] for i in idx], cols=len(idx))

    chain = model.chain
    ds, db = chain.s.dim, chain.b.dim
    dn1 = model.slice_dim
    ranges = {
        "s": range(0, ds),
        "b": range(ds, ds + db),
        "Ym": range(ds + db, ds + 2 * db),
        "N1": range(ds + 2 * db, ds + 2 * db + dn1),
    }
    names = ["s", "b", "Ym", "N1"]
    blockof = {}
    for nm in names:
        for i in ranges[nm]:
            blockof[i] = nm
    xm_names = {"b", "Ym"}
    for i in range(len(idx)):
        for j in range(len(idx)):
            bi, bj = blockof[i], blockof[j]
            same = bi == bj or (bi in xm_names and bj in xm_names)
            if not same:
                assert gram.entries[i][j] == 0, "slice form has a cross term"

    chu = chu_form(model.inst.algebra, model.inst.mu)
    svecs = chain.s.basis_vectors()
    for i, x in enumerate(svecs):
        for j, y in enumerate(svecs):
            assert gram.entries[i][j] == chu(x, y)
    for i in range(db):
        for j in range(db):
            expected_bY = Fraction(1) if i == j else ZERO
            assert gram.entries[ds + i][ds + db + j] == expected_bY
            assert gram.entries[ds + db + i][ds + j] == -expected_bY
            assert gram.entries[ds + i][ds + j] == 0
            assert gram.entries[ds + db + i][ds + db + j] == 0
    og = model.inst.slice_rep.omega.gram
    base = ds + 2 * db
    for i in range(dn1):
        for j in range(dn1):
            assert gram.entries[base + i][base + j] == og.entries[i][j]

    return BilinearForm(gram)


def _eta_action_on_nh1(decomp: WittDecompositionH, model: TangentModel,
                       eta: Vec) -> Matrix:
    """Matrix of the h_m-action on NH1 in the block coordinates.

    eta acts by the bracket on the s and b blocks (both are ad(g_m)-stable),
    by the negative coadjoint action on Y_m inside m*, and by the slice
    representation on N1.
    """
    L = model.inst.algebra
    chain = model.chain
    ds, db, dn1 = chain.s.dim, chain.b.dim, model.slice_dim
    size = ds + 2 * db + dn1
    cols: list[list[Fraction]] = []

    def bracket_block(space: Subspace, offset: int):
        for v in space.basis_vectors():
            w = L.bracket(eta, v)
            coords = space.coords_of(w)
            assert coords is not None, "block is not ad(gm)-stable"
            col = [ZERO] * size
            for t, c in enumerate(coords):
                col[offset + t] = c
            cols.append(col)

    bracket_block(chain.s, 0)
    bracket_block(chain.b, ds)

    # -ad*_eta on m*, restricted to the b* coordinates.
    m_cols = [model.mn_basis.col(j) for j in range(model.dim_m)]
    ad_on_m = []
    for y in m_cols:
        w = L.bracket(eta, y)
        coords = _coords_in_columns(m_cols, w, model)
        ad_on_m.append(coords)
    for j in range(db):
        rho = [ZERO] * model.dim_m
        rho[chain.p.dim + j] = Fraction(1)
        new = [ZERO] * model.dim_m
        for k in range(model.dim_m):
            # (eta . rho)_k = -<rho, [eta, m_k]>
            new[k] = -sum((rho[t] * ad_on_m[k][t]
                           for t in range(model.dim_m)), ZERO)
        assert all(new[t] == 0 for t in range(chain.p.dim)), \
            "coadjoint action leaves the b* block"
        col = [ZERO] * size
        for t in range(db):
            col[ds + db + t] = new[chain.p.dim + t]
        cols.append(col)

    A_eta = _combine_slice_action(model, eta)
    for j in range(dn1):
        col = [ZERO] * size
        for i in range(dn1):
            col[ds + 2 * db + i] = A_eta.entries[i][j]
        cols.append(col)

    return Matrix.from_cols(cols, rows=size)


def _coords_in_columns(cols: list[Vec], v: Vec, model: TangentModel) -> Vec:
    B = Matrix.from_cols(cols, rows=model.inst.dim)
    sol = B.solve(v)
    assert sol is not None, "vector is outside the m block"
    return sol


def _combine_slice_action(model: TangentModel, eta: Vec) -> Matrix:
    coords = model.inst.gm.coords_of(eta)
    assert coords is not None, "eta must lie in g_m"
    A = Matrix.zeros(model.slice_dim, model.slice_dim)
    for t, c in enumerate(coords):
        if c != 0:
            A = A + model.inst.slice_rep.action[t].scale(c)
    return A


def slice_momentum(decomp: WittDecompositionH, model: TangentModel,
                   nu_tilde: Vec) -> Vec:
    """Momentum of the h_m-action on NH1 at nu_tilde, in h_m* coordinates.

    Evaluates the three-term closed formula

        1/2 <(ad*_x)^2 mu, eta> + <-ad*_b f(w), eta>
            + 1/2 omega_N1(eta.nu, nu)

    and checks it, for every h_m basis vector, against the direct definition
    1/2 omega_NH1(eta . nu_tilde, nu_tilde).  With h_m = 0 the result is the
    zero covector in a zero-dimensional dual.
    """
    chain = model.chain
    L = model.inst.algebra
    ds, db, dn1 = chain.s.dim, chain.b.dim, model.slice_dim
    if len(nu_tilde) != ds + 2 * db + dn1:
        raise ValueError("nu_tilde must be given in NH1 block coordinates")
    hm_vectors = chain.h_m.basis_vectors()
    if not hm_vectors:
        return ()

    x_s = nu_tilde[:ds]
    c_b = nu_tilde[ds:ds + db]
    w = nu_tilde[ds + db:ds + 2 * db]
    nu = nu_tilde[ds + 2 * db:]

    x = _linear_combination(chain.s.basis_vectors(), x_s, model.inst.dim)
    bvec = _linear_combination(chain.b.basis_vectors(), c_b, model.inst.dim)
    fw = tuple([ZERO] * chain.p.dim) + tuple(w)  # f(w) in m* coordinates

    full_gram = slice_form(decomp, model).gram
    values = []
    for eta in hm_vectors:
        quad = L.coad_apply(x, L.coad_apply(x, model.inst.mu))
        term1 = Fraction(1, 2) * dot(quad, eta)

        br = L.bracket(bvec, eta)
        br_m = _coords_in_columns(
            [model.mn_basis.col(j) for j in range(model.dim_m)], br, model) \
            if model.dim_m else ()
        term2 = -dot(fw, br_m) if model.dim_m else ZERO

        A_eta = _combine_slice_action(model, eta)
        term3 = Fraction(1, 2) * dot(A_eta.apply(nu),
                                     model.inst.slice_rep.omega.gram.apply(nu))
        # omega(Av, v) with our Gram convention is (Av)^T G v.
        formula = term1 + term2 + term3

        act = _eta_action_on_nh1(decomp, model, eta)
        moved = act.apply(nu_tilde)
        direct = Fraction(1, 2) * dot(moved, full_gram.apply(nu_tilde))
        assert formula == direct, "momentum formula disagrees with definition"
        values.append(formula)
    return tuple(values)


def _linear_combination(vectors: list[Vec], coords: Vec, n: int) -> Vec:
    out = [ZERO] * n
    for c, v in zip(coords, vectors, strict=True):
        if c != 0:
            out = [x + c * y for x, y in zip(out, v)]
    return tuple(out)


def slice_momentum_forms(decomp: WittDecompositionH,
                         model: TangentModel) -> tuple[Matrix, ...]:
    """The momentum as quadratic forms: one Gram matrix per h_m basis vector.

    Each matrix S satisfies <momentum(v), eta> = v^T S v and is symmetric
    outright, because the block action is infinitesimally symplectic for
    the form on NH1.
    """
    gram = slice_form(decomp, model).gram
    forms = []
    for eta in model.chain.h_m.basis_vectors():
        act = _eta_action_on_nh1(decomp, model, eta)
        S = (act.transpose() @ gram).scale(Fraction(1, 2))
        assert S.is_symmetric(), "momentum quadratic form is not symmetric"
        forms.append(S)
    return tuple(forms)


def coadjoint_slice_check(chain, inst) -> list[Check]:
    """Checks on the orbit tangent model g/g_mu (coordinates on n).

    The kernel of x -> -(ad*_x mu)|_h on the quotient must be the image of
    a + s, and the image of s must complement the h_alpha orbit inside it.
    """
    L = inst.algebra
    n_vectors = (chain.a.basis_vectors() + chain.s.basis_vectors()
                 + chain.ntilde.basis_vectors() + chain.r.basis_vectors())
    dim_n = len(n_vectors)
    h_vectors = inst.h.basis_vectors()
    rows = []
    for eta in h_vectors:
        rows.append(tuple(-dot(inst.mu, L.bracket(v, eta)) for v in n_vectors))
    constraint = Matrix.from_rows(rows, cols=dim_n)
    ker = kernel(constraint)

    da, dssz = chain.a.dim, chain.s.dim
    a_image = Subspace.span(dim_n, [unit_vec(dim_n, i) for i in range(da)])
    s_image = Subspace.span(dim_n, [unit_vec(dim_n, da + i) for i in range(dssz)])
    expected = sum_spaces(a_image, s_image) if da + dssz else Subspace.zero(dim_n)

    out = [Check("coadjoint.kernel_is_a_plus_s_orbit", ker == expected)]

    # h_alpha orbit in the quotient: n-components of the h_alpha basis.
    B2 = chain.g_mu.basis.hstack(Matrix.from_cols(n_vectors, rows=L.dim)) \
        if dim_n else chain.g_mu.basis
    images = []
    for v in chain.h_alpha.basis_vectors():
        coords = B2.solve(v)
        assert coords is not None
        images.append(tuple(coords[chain.g_mu.dim:]))
    halpha_orbit = Subspace.span(dim_n, images)
    out.append(Check(
        "coadjoint.s_complements_halpha_orbit",
        is_direct_sum([halpha_orbit, s_image])
        and sum_spaces(halpha_orbit, s_image) == ker,
    ))
    return out
