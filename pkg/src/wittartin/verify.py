"""The full named-check suite.

run_all executes every invariant the package claims, on one instance, and
returns a flat list of named checks.  All core checks are exact; only the
tube consistency checks carry floating-point tolerances.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import decomposition as dec
from . import pointmodel as pm
from . import tube
from .exactlin import (
    Matrix,
    Subspace,
    Vec,
    ZERO,
    dot,
    kernel,
    perp_under_form,
    sum_spaces,
    unit_vec,
    zero_vec,
)
from .liecore import chu_form, h_alpha, h_perp_mu, killing_form, stabilizer_of_momentum, unit
from .splitting import (
    Check,
    ProblemInstance,
    SplittingChain,
    build_chain,
    chain_checks,
    dim_formulas,
    validate,
)


def _guard(name: str, fn) -> list[Check]:
    """Run fn() -> list[Check]; convert any assertion into a failed check."""
    try:
        return fn()
    except AssertionError as e:
        return [Check(name, False, f"assertion failed: {e}")]
    except dec.ChainInconsistent as e:
        return [Check(name, False, str(e))]


def liecore_checks(inst: ProblemInstance) -> list[Check]:
    L = inst.algebra
    out = []

    g_mu = stabilizer_of_momentum(L, inst.mu)
    ok = all(
        all(x == 0 for x in L.coad_apply(v, inst.mu))
        for v in g_mu.basis_vectors()
    )
    out.append(Check("liecore.stabilizer_annihilates_mu", ok))

    chu = chu_form(L, inst.mu)
    out.append(Check("liecore.chu_radical_is_g_mu", chu.radical() == g_mu))

    # The center (common kernel of all ad matrices) stabilizes any momentum.
    stacked = []
    for i in range(L.dim):
        stacked.extend(L.ad_matrix(unit(L.dim, i)).entries)
    center = kernel(Matrix.from_rows(stacked, cols=L.dim))
    out.append(Check("liecore.center_in_stabilizer", center.leq(g_mu)))

    # Second description of h_alpha: kernel of the pairing inside h-coordinates.
    hv = inst.h.basis_vectors()
    rows = []
    for eta in hv:
        rows.append(tuple(dot(inst.mu, L.bracket(x, eta)) for x in hv))
    inside = kernel(Matrix.from_rows(rows, cols=len(hv)))
    lifted = Subspace.span(
        L.dim,
        [_combo(hv, c, L.dim) for c in inside.basis_vectors()],
    )
    out.append(Check("liecore.h_alpha_two_descriptions",
                     lifted == h_alpha(L, inst.h, inst.mu)))

    B = killing_form(L)
    ok = True
    n = L.dim
    for i in range(n):
        zi = unit(n, i)
        for j in range(n):
            xj = unit(n, j)
            for k in range(n):
                yk = unit(n, k)
                lhs = B(L.bracket(zi, xj), yk) + B(xj, L.bracket(zi, yk))
                if lhs != 0:
                    ok = False
    out.append(Check("liecore.killing_ad_invariant", ok))

    out.append(Check("liecore.g_mu_in_h_perp_mu",
                     g_mu.leq(h_perp_mu(L, inst.h, inst.mu))))
    return out


def _combo(vectors, coords, n) -> Vec:
    out = [ZERO] * n
    for c, v in zip(coords, vectors, strict=True):
        if c != 0:
            out = [x + c * y for x, y in zip(out, v)]
    return tuple(out)


def model_checks(inst: ProblemInstance, chain: SplittingChain,
                 model: pm.TangentModel) -> list[Check]:
    out = []
    out.append(Check("model.omega_antisymmetric",
                     model.omega.is_antisymmetric()))
    out.append(Check("model.omega_nondegenerate",
                     model.omega.gram.rank() == model.total_dim))

    kerG = pm.ker_dphi_G(model)
    kerH = pm.ker_dphi_H(model)
    m_units = [unit_vec(model.total_dim, i)
               for name in ("p", "b") for i in model.blocks[name]]
    n1_units = [unit_vec(model.total_dim, i) for i in model.blocks["N1"]]
    expected = Subspace.span(model.total_dim, m_units + n1_units)
    out.append(Check("model.ker_dphiG_is_T0_plus_N1", kerG == expected))
    out.append(Check("model.ker_dphiG_inside_ker_dphiH", kerG.leq(kerH)))

    # Momentum property at the linear level: the kernels are the symplectic
    # orthogonals of the orbit directions.
    g_orbit = Subspace.span(
        model.total_dim,
        [pm.inf_action(model, unit(inst.dim, i)).coords()
         for i in range(inst.dim)],
    )
    h_orbit = Subspace.span(
        model.total_dim,
        [pm.inf_action(model, v).coords() for v in inst.h.basis_vectors()],
    )
    out.append(Check("model.ker_dphiG_is_orbit_perp",
                     kerG == perp_under_form(model.omega, g_orbit)))
    out.append(Check("model.ker_dphiH_is_h_orbit_perp",
                     kerH == perp_under_form(model.omega, h_orbit)))

    d = dim_formulas(chain)
    out.append(Check("dims.kernel_gap_formula",
                     kerH.dim - kerG.dim == d.kernel_gap,
                     f"actual gap {kerH.dim - kerG.dim}, predicted {d.kernel_gap}"))

    def f_contract():
        checks = []
        for j in range(model.dim_m):
            w = pm.TangentVector(
                zero_vec(model.dim_m + model.dim_n),
                unit_vec(model.dim_m, j),
                zero_vec(model.slice_dim))
            pm.f_map(model, w)  # contract asserted inside
        checks.append(Check("model.f_contract", True))
        return checks
    out.extend(_guard("model.f_contract", f_contract))

    ok = True
    for x in (unit(inst.dim, i) for i in range(inst.dim)):
        v = pm.inf_action(model, x)
        if not inst.gm.contains(x) and all(c == 0 for c in v.u):
            ok = False
    for v in inst.gm.basis_vectors():
        if any(c != 0 for c in pm.inf_action(model, v).u):
            ok = False
    out.append(Check("model.inf_action_kernel_is_gm", ok))
    return out


def decomposition_checks(inst: ProblemInstance, chain: SplittingChain,
                         model: pm.TangentModel,
                         samples: int, seed: int) -> list[Check]:
    out = []

    def g_side():
        dec.decompose_G(model)  # assertions inside
        return [Check("wittG.all_assertions", True)]
    out.extend(_guard("wittG.all_assertions", g_side))

    decomp = dec._build_h_parts(model)
    out.extend(dec.h_decomposition_checks(decomp, model))

    # Oracle route: generic rank reduction of the momentum differential
    # against the constructed TH0 + NH1.
    out.append(Check(
        "wittH.oracle_kernel_equality",
        pm.ker_dphi_H(model) == sum_spaces(decomp.TH0, decomp.NH1),
    ))

    def form_block():
        form = dec.slice_form(decomp, model)
        nh1_dim = chain.s.dim + 2 * chain.b.dim + model.slice_dim
        checks = [Check("sliceform.block_diagonal", True),
                  Check("sliceform.dim_formula",
                        form.ambient_dim == nh1_dim
                        and decomp.NH1.dim == nh1_dim)]
        d = dim_formulas(chain)
        checks.append(Check("dims.slice_dim_formula",
                            decomp.NH1.dim == d.slice_dim_H))
        return checks
    out.extend(_guard("sliceform.block_diagonal", form_block))

    rng = random.Random(seed)

    def momentum_block():
        nh1_dim = chain.s.dim + 2 * chain.b.dim + model.slice_dim
        for _ in range(samples):
            nu_tilde = tuple(
                Fraction(rng.randint(-6, 6), rng.randint(1, 4))
                for _ in range(nh1_dim))
            dec.slice_momentum(decomp, model, nu_tilde)  # equality asserted
        return [Check("momentum.formula_equals_direct", True,
                      f"{samples} samples")]
    out.extend(_guard("momentum.formula_equals_direct", momentum_block))

    def momentum_forms():
        forms = dec.slice_momentum_forms(decomp, model)
        nh1_dim = chain.s.dim + 2 * chain.b.dim + model.slice_dim
        for _ in range(min(samples, 3)):
            v = tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                      for _ in range(nh1_dim))
            value = dec.slice_momentum(decomp, model, v)
            quadratic = tuple(dot(v, S.apply(v)) for S in forms)
            assert value == quadratic
        return [Check("momentum.quadratic_forms_symmetric", True)]
    out.extend(_guard("momentum.quadratic_forms_symmetric", momentum_forms))

    out.append(Check("momentum.phiN1_equivariance",
                     _phi_n1_equivariance(inst, rng, samples)))

    out.extend(dec.coadjoint_slice_check(chain, inst))
    return out


def _phi_n1_equivariance(inst: ProblemInstance, rng: random.Random,
                         samples: int) -> bool:
    """DPhi_N1(nu)(eta.nu) = -ad*_eta|_{g_m*} Phi_N1(nu), exactly, sampled."""
    L = inst.algebra
    gm_vectors = inst.gm.basis_vectors()
    if not gm_vectors or inst.slice_rep.dim == 0:
        return True
    for _ in range(samples):
        nu = tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 4))
                   for _ in range(inst.slice_rep.dim))
        phi = tube.phi_n1(inst, nu)
        for t, eta in enumerate(gm_vectors):
            moved = inst.slice_rep.action[t].apply(nu)
            lhs = tube.dphi_n1(inst, nu, moved)
            # -(ad*_eta lam) restricted to g_m*: entries -<lam, [eta, gm_s]>.
            rhs = []
            for s, gs in enumerate(gm_vectors):
                br = L.bracket(eta, gs)
                coords = inst.gm.coords_of(br)
                if coords is None:
                    return False
                rhs.append(-dot(phi, coords))
            if tuple(lhs) != tuple(rhs):
                return False
    return True


def tube_checks(inst: ProblemInstance, chain: SplittingChain,
                model: pm.TangentModel, samples: int, seed: int,
                tol: tube.FloatTolerance = tube.FloatTolerance()) -> list[Check]:
    out = []
    origin = tube.TubePoint(zero_vec(inst.dim), zero_vec(model.dim_m),
                            zero_vec(model.slice_dim))

    ok = True
    for i in range(model.total_dim):
        vi = pm.unit_tangent(model, i)
        for j in range(model.total_dim):
            vj = pm.unit_tangent(model, j)
            val = tube.omega_tube(inst, chain, origin, vi, vj, model)
            if val != model.omega.gram.entries[i][j]:
                ok = False
    out.append(Check("tube.base_point_matches_model", ok))

    rng = random.Random(seed)

    def rand_small() -> Fraction:
        return Fraction(rng.randint(-1, 1), 10)

    ok_anti = True
    ok_nondeg = True
    for _ in range(min(samples, 5)):
        p = tube.TubePoint(
            zero_vec(inst.dim),
            tuple(rand_small() for _ in range(model.dim_m)),
            tuple(rand_small() for _ in range(model.slice_dim)))
        gram_rows = []
        for i in range(model.total_dim):
            vi = pm.unit_tangent(model, i)
            row = []
            for j in range(model.total_dim):
                vj = pm.unit_tangent(model, j)
                row.append(tube.omega_tube(inst, chain, p, vi, vj, model))
            gram_rows.append(tuple(row))
        G = Matrix.from_rows(gram_rows, cols=model.total_dim)
        if not G.is_antisymmetric():
            ok_anti = False
        if model.total_dim and G.det() == 0:
            ok_nondeg = False
    out.append(Check("tube.antisymmetric_at_slice_points", ok_anti))
    out.append(Check("tube.nondegenerate_near_origin", ok_nondeg))

    out.extend(tube.check_dphi_consistency(inst, chain, tol))
    out.extend(tube.phi_equivariance_check(
        inst, chain, max(samples, 1), tol, seed=seed))
    return out


def run_all(inst: ProblemInstance, samples: int = 10,
            seed: int = 0, include_tube: bool = True) -> list[Check]:
    """Every named check for one instance, in a stable order."""
    checks: list[Check] = []
    report = validate(inst)
    checks.extend(Check(f"validate.{c.name}", c.passed, c.detail)
                  for c in report.checks)
    if not report.passed:
        return checks

    checks.extend(liecore_checks(inst))
    chain = build_chain(inst)
    checks.extend(chain_checks(inst, chain))

    def build():
        model = pm.build_model(chain, inst)
        return [Check("model.builds", True)], model

    try:
        built, model = build()
        checks.extend(built)
    except pm.DegenerateModel as e:
        checks.append(Check("model.builds", False, str(e)))
        return checks

    checks.extend(model_checks(inst, chain, model))
    checks.extend(decomposition_checks(inst, chain, model, samples, seed))
    if include_tube:
        checks.extend(tube_checks(inst, chain, model, samples, seed))
    return checks
