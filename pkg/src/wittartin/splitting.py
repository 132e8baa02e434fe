"""Instance validation and the invariant subspace chain.

Given algebra data (g, h, g_m, mu, inner product, slice representation) this
module builds the named chain of ad(g_m)-invariant subspaces

    h_m, p, b, a, s(G,H,mu), q, ntilde, r, m, n

whose direct-sum identities drive both tangent-space decompositions.  Every
complement is an orthogonal complement for the instance's invariant inner
product, except r, which is additionally sheared inside the Chu-orthogonal
of ntilde + s so that the H-side orthogonality relations hold for any valid
inner product (a plain orthogonal complement does not guarantee them).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exactlin import (
    BilinearForm,
    Matrix,
    Subspace,
    Vec,
    intersect,
    is_direct_sum,
    orth_complement,
    perp_under_form,
    sum_spaces,
)
from .liecore import (
    InnerProduct,
    LieAlgebra,
    chu_form,
    h_alpha,
    h_perp_mu,
    stabilizer_of_momentum,
    subalgebra_witness,
)


class ValidationFailed(ValueError):
    """Raised by build_chain when the instance fails validation."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        names = ", ".join(c.name for c in report.failures())
        super().__init__(f"instance validation failed: {names}")


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


@dataclass(frozen=True)
class SliceRep:
    """Symplectic slice data: a form on Q^d and one action matrix per g_m
    basis vector (the linearised action, keyed to the canonical g_m basis)."""

    omega: BilinearForm
    action: tuple[Matrix, ...]

    @property
    def dim(self) -> int:
        return self.omega.ambient_dim

    @staticmethod
    def trivial() -> "SliceRep":
        return SliceRep(BilinearForm(Matrix.zeros(0, 0)), ())


@dataclass(frozen=True)
class ProblemInstance:
    """Algebra-level data of a point with momentum mu and stabilizer g_m."""

    algebra: LieAlgebra
    h: Subspace
    gm: Subspace
    mu: Vec
    ip: InnerProduct
    slice_rep: SliceRep
    gm_component_reps: tuple[Matrix, ...] = field(default=())

    @property
    def dim(self) -> int:
        return self.algebra.dim


def validate(inst: ProblemInstance) -> ValidationReport:
    """Check every instance invariant; failures carry a witness."""
    L = inst.algebra
    n = L.dim
    checks: list[Check] = []

    def record(name: str, passed: bool, detail: str = ""):
        checks.append(Check(name, passed, detail))

    record("mu_length", len(inst.mu) == n,
           f"len(mu)={len(inst.mu)}, dim g={n}")
    record("h_ambient", inst.h.ambient_dim == n, "")
    record("gm_ambient", inst.gm.ambient_dim == n, "")
    if not all(c.passed for c in checks):
        return ValidationReport(tuple(checks))

    w = subalgebra_witness(L, inst.h)
    record("h_subalgebra", w is None,
           "" if w is None else f"bracket of h basis pair {w} leaves h")
    w = subalgebra_witness(L, inst.gm)
    record("gm_subalgebra", w is None,
           "" if w is None else f"bracket of gm basis pair {w} leaves gm")

    g_mu = stabilizer_of_momentum(L, inst.mu)
    bad = next((i for i, v in enumerate(inst.gm.basis_vectors())
                if not g_mu.contains(v)), None)
    record("gm_in_g_mu", bad is None,
           "" if bad is None else f"gm basis vector {bad} does not stabilize mu")

    witness = None
    for i, eta in enumerate(inst.gm.basis_vectors()):
        for j, x in enumerate(inst.h.basis_vectors()):
            if not inst.h.contains(L.bracket(eta, x)):
                witness = (i, j)
                break
        if witness:
            break
    record("gm_normalizes_h", witness is None,
           "" if witness is None else f"[gm_{witness[0]}, h_{witness[1]}] leaves h")

    record("ip_dimension", inst.ip.ambient_dim == n, "")
    record("ip_symmetric", inst.ip.gram.is_symmetric(), "")
    minors = inst.ip.gram.leading_principal_minors() if inst.ip.gram.rows == n else []
    record("ip_positive_definite", bool(minors) and all(m > 0 for m in minors), "")

    witness = None
    G = inst.ip.gram
    for t, eta in enumerate(inst.gm.basis_vectors()):
        ad_eta = L.ad_matrix(eta)
        defect = ad_eta.transpose() @ G + G @ ad_eta
        if not defect.is_zero():
            witness = t
            break
    record("ip_ad_gm_invariant", witness is None,
           "" if witness is None else f"ad invariance fails for gm basis vector {witness}")

    for t, rep in enumerate(inst.gm_component_reps):
        ok = rep.rows == n and rep.cols == n and rep.rank() == n
        record(f"gm_component_rep_{t}_invertible", ok, "")

    sl = inst.slice_rep
    record("slice_action_count", len(sl.action) == inst.gm.dim,
           f"{len(sl.action)} action matrices for gm of dim {inst.gm.dim}")
    record("slice_omega_antisymmetric", sl.omega.is_antisymmetric(), "")
    record("slice_omega_nondegenerate",
           sl.dim == 0 or sl.omega.is_nondegenerate(), "")
    witness = None
    for t, A in enumerate(sl.action):
        if A.rows != sl.dim or A.cols != sl.dim:
            witness = t
            break
        defect = A.transpose() @ sl.omega.gram + sl.omega.gram @ A
        if not defect.is_zero():
            witness = t
            break
    record("slice_action_symplectic", witness is None,
           "" if witness is None else f"action matrix {witness} is not in sp(omega)")

    witness = None
    if len(sl.action) == inst.gm.dim:
        gv = inst.gm.basis_vectors()
        for i in range(len(gv)):
            for j in range(len(gv)):
                br = L.bracket(gv[i], gv[j])
                coords = inst.gm.coords_of(br)
                if coords is None:
                    continue  # reported by gm_subalgebra
                lhs = Matrix.zeros(sl.dim, sl.dim)
                for t, c in enumerate(coords):
                    if c != 0:
                        lhs = lhs + sl.action[t].scale(c)
                rhs = sl.action[i] @ sl.action[j] - sl.action[j] @ sl.action[i]
                if lhs != rhs:
                    witness = (i, j)
                    break
            if witness:
                break
    record("slice_action_homomorphism", witness is None,
           "" if witness is None else f"homomorphism fails on gm pair {witness}")

    return ValidationReport(tuple(checks))


@dataclass(frozen=True)
class SplittingChain:
    """All named subspaces of the chain, in ambient g coordinates."""

    g_mu: Subspace
    h_mu: Subspace
    h_m: Subspace
    h_alpha: Subspace
    h_perp_mu_space: Subspace
    hm_perp_in_gm: Subspace
    p: Subspace
    b: Subspace
    a: Subspace
    s: Subspace
    q: Subspace
    ntilde: Subspace
    r: Subspace
    m_space: Subspace
    n_space: Subspace
    slice_dim: int

    def dims(self) -> dict[str, int]:
        return {
            "g": self.g_mu.ambient_dim,
            "g_mu": self.g_mu.dim,
            "h_mu": self.h_mu.dim,
            "h_m": self.h_m.dim,
            "h_alpha": self.h_alpha.dim,
            "h_perp_mu": self.h_perp_mu_space.dim,
            "p": self.p.dim,
            "b": self.b.dim,
            "a": self.a.dim,
            "s": self.s.dim,
            "q": self.q.dim,
            "ntilde": self.ntilde.dim,
            "r": self.r.dim,
            "m": self.m_space.dim,
            "n": self.n_space.dim,
            "N1": self.slice_dim,
        }


def _lagrangian_shear(chu: BilinearForm, a: Subspace, C: Subspace) -> Subspace:
    """Shear the complement C into the Chu-isotropic graph {c + tau(c)}.

    tau: C -> a is the unique map with chu(tau(c), c') = -1/2 chu(c, c');
    the corrected complement pairs to zero with itself, which is what the
    H-side Lagrangian axioms need from r.
    """
    if C.dim == 0:
        return C
    avs = a.basis_vectors()
    cvs = C.basis_vectors()
    K = Matrix.from_rows(
        [[chu(ci, cj) for cj in cvs] for ci in cvs], cols=C.dim)
    P = Matrix.from_rows(
        [[chu(ai, cj) for cj in cvs] for ai in avs], cols=C.dim)
    assert P.rows == P.cols, "pairing a x C must be square"
    T = P.transpose().inverse() @ K.scale(Fraction(1, 2))
    sheared = []
    for j, cv in enumerate(cvs):
        v = list(cv)
        for al, av in enumerate(avs):
            coef = T.entries[al][j]
            if coef != 0:
                v = [x + coef * y for x, y in zip(v, av)]
        sheared.append(tuple(v))
    return Subspace.span(a.ambient_dim, sheared)


def build_chain(inst: ProblemInstance) -> SplittingChain:
    """Construct the full chain; every defining identity is asserted."""
    report = validate(inst)
    if not report.passed:
        raise ValidationFailed(report)

    L = inst.algebra
    ip = inst.ip.form()
    g = Subspace.full(L.dim)

    g_mu = stabilizer_of_momentum(L, inst.mu)
    hperp = h_perp_mu(L, inst.h, inst.mu)
    halpha = h_alpha(L, inst.h, inst.mu)
    h_mu = intersect(inst.h, g_mu)
    h_m = intersect(inst.h, inst.gm)

    hm_perp = orth_complement(h_m, inst.gm, ip)
    p = orth_complement(h_m, h_mu, ip)
    b = orth_complement(sum_spaces(inst.gm, h_mu), g_mu, ip)
    a = orth_complement(h_mu, halpha, ip)
    s = orth_complement(sum_spaces(g_mu, halpha), hperp, ip)
    q = sum_spaces(a, s)
    ntilde = orth_complement(halpha, inst.h, ip)

    chu = chu_form(L, inst.mu)
    V = perp_under_form(chu, sum_spaces(ntilde, s))
    Lsub = sum_spaces(g_mu, a)
    assert Lsub.leq(V), "g_mu + a must be Chu-orthogonal to ntilde + s"
    C = orth_complement(Lsub, V, ip)
    r = _lagrangian_shear(chu, a, C)

    m_space = sum_spaces(p, b)
    n_space = sum_spaces(q, ntilde, r)

    chain = SplittingChain(
        g_mu=g_mu, h_mu=h_mu, h_m=h_m, h_alpha=halpha,
        h_perp_mu_space=hperp, hm_perp_in_gm=hm_perp,
        p=p, b=b, a=a, s=s, q=q, ntilde=ntilde, r=r,
        m_space=m_space, n_space=n_space,
        slice_dim=inst.slice_rep.dim,
    )
    problems = [c for c in chain_checks(inst, chain) if not c.passed]
    assert not problems, f"chain identity failed: {problems[0].name}"
    return chain


def chain_checks(inst: ProblemInstance, chain: SplittingChain) -> list[Check]:
    """The defining identities of the chain, as named pass/fail checks."""
    L = inst.algebra
    g = Subspace.full(L.dim)
    chu = chu_form(L, inst.mu)
    out: list[Check] = []

    def record(name, passed, detail=""):
        out.append(Check(name, passed, detail))

    record("chain.gm_decomposition",
           is_direct_sum([chain.h_m, chain.hm_perp_in_gm])
           and sum_spaces(chain.h_m, chain.hm_perp_in_gm) == inst.gm)
    record("chain.hmu_decomposition",
           is_direct_sum([chain.h_m, chain.p])
           and sum_spaces(chain.h_m, chain.p) == chain.h_mu)
    record("chain.gmu_decomposition",
           is_direct_sum([chain.h_m, chain.p, chain.hm_perp_in_gm, chain.b])
           and sum_spaces(chain.h_m, chain.p, chain.hm_perp_in_gm, chain.b)
           == chain.g_mu)
    record("chain.halpha_decomposition",
           is_direct_sum([chain.h_mu, chain.a])
           and sum_spaces(chain.h_mu, chain.a) == chain.h_alpha)
    record("chain.hperpmu_decomposition",
           is_direct_sum([chain.g_mu, chain.a, chain.s])
           and sum_spaces(chain.g_mu, chain.a, chain.s)
           == chain.h_perp_mu_space)
    record("chain.q_decomposition",
           is_direct_sum([chain.a, chain.s])
           and sum_spaces(chain.a, chain.s) == chain.q)
    record("chain.h_decomposition",
           is_direct_sum([chain.h_alpha, chain.ntilde])
           and sum_spaces(chain.h_alpha, chain.ntilde) == inst.h)
    record("chain.ntilde_avoids_hperpmu",
           intersect(chain.ntilde, chain.h_perp_mu_space).dim == 0)
    record("chain.g_decomposition_hperp",
           is_direct_sum([chain.h_perp_mu_space, chain.ntilde, chain.r])
           and sum_spaces(chain.h_perp_mu_space, chain.ntilde, chain.r) == g)
    record("chain.g_decomposition_gm_m_n",
           is_direct_sum([inst.gm, chain.m_space, chain.n_space])
           and sum_spaces(inst.gm, chain.m_space, chain.n_space) == g
           and sum_spaces(chain.p, chain.b) == chain.m_space
           and sum_spaces(chain.q, chain.ntilde, chain.r) == chain.n_space)
    record("chain.gmu_halpha_in_hperpmu",
           chain.g_mu.leq(chain.h_perp_mu_space)
           and chain.h_alpha.leq(chain.h_perp_mu_space))
    record("chain.s_dim_formula",
           chain.s.dim == chain.h_perp_mu_space.dim - chain.g_mu.dim
           - chain.h_alpha.dim + chain.h_mu.dim)

    # r must pair to zero under the Chu form with ntilde, s and itself;
    # this is what makes r*m land in the H-side Lagrangian complement.
    ok = True
    for rv in chain.r.basis_vectors():
        for other in (chain.ntilde.basis_vectors()
                      + chain.s.basis_vectors()
                      + chain.r.basis_vectors()):
            if chu(rv, other) != 0:
                ok = False
    record("chain.r_chu_orthogonality", ok)
    record("chain.r_dim_matches_a", chain.r.dim == chain.a.dim)

    named = {
        "h_m": chain.h_m, "hm_perp_in_gm": chain.hm_perp_in_gm,
        "p": chain.p, "b": chain.b, "a": chain.a, "s": chain.s,
        "q": chain.q, "ntilde": chain.ntilde, "r": chain.r,
        "m": chain.m_space, "n": chain.n_space,
        "g_mu": chain.g_mu, "h_mu": chain.h_mu, "h_alpha": chain.h_alpha,
        "h_perp_mu": chain.h_perp_mu_space,
    }
    bad = []
    for name, space in named.items():
        for eta in inst.gm.basis_vectors():
            for v in space.basis_vectors():
                if not space.contains(L.bracket(eta, v)):
                    bad.append(name)
                    break
    record("chain.ad_gm_invariance", not bad,
           "" if not bad else f"not ad(gm)-invariant: {sorted(set(bad))}")

    for t, rep in enumerate(inst.gm_component_reps):
        bad = []
        for name, space in named.items():
            for v in space.basis_vectors():
                if not space.contains(rep.apply(v)):
                    bad.append(name)
                    break
        record(f"chain.gm_component_rep_{t}_invariance", not bad,
               "" if not bad else f"not invariant under rep {t}: {sorted(set(bad))}")

    return out


@dataclass(frozen=True)
class DimReport:
    dims: dict[str, int]
    slice_dim_H: int          # predicted dim of the H-slice
    kernel_gap: int           # predicted dim ker DPhi_H - dim ker DPhi_G

    @property
    def slice_dim_G(self) -> int:
        return self.dims["N1"]


def dim_formulas(chain: SplittingChain) -> DimReport:
    """Dimension bookkeeping for the compatible slice."""
    d = chain.dims()
    slice_dim_H = d["N1"] + 2 * d["b"] + d["s"]
    kernel_gap = d["q"] + d["b"]
    assert kernel_gap == d["a"] + d["s"] + d["b"]
    return DimReport(dims=d, slice_dim_H=slice_dim_H, kernel_gap=kernel_gap)
