"""Local normal form away from the base point.

omega_tube evaluates the model 2-form at slice points (group coordinate at
the identity) in exact arithmetic; phi_tilde evaluates the normal-form
momentum map, which needs a matrix exponential and is therefore the one
floating-point corner of the package.  Consistency checks tie both back to
the exact linear model.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .exactlin import Matrix, Vec, ZERO, dot, is_zero_vec, zero_vec
from .pointmodel import TangentModel, TangentVector, build_model, dphi_G
from .splitting import Check, ProblemInstance, SplittingChain


class OffSlice(ValueError):
    """The point has a nonzero group coordinate where none is allowed."""


class SeriesNotConverged(ArithmeticError):
    """The exponential series remainder bound exceeded the tolerance."""


@dataclass(frozen=True)
class FloatTolerance:
    rel_tol: float = 1e-9
    fd_tol: float = 1e-6

    def __post_init__(self):
        if self.rel_tol <= 0 or self.fd_tol <= 0:
            raise ValueError("tolerances must be positive")


@dataclass(frozen=True)
class TubePoint:
    """A point [exp(xi), rho, nu] of the local model, rational coordinates."""

    xi: Vec
    rho: Vec
    nu: Vec


def phi_n1(inst: ProblemInstance, nu: Vec) -> Vec:
    """Slice momentum in g_m* coordinates: <., x> = 1/2 omega(x.nu, nu)."""
    og = inst.slice_rep.omega.gram
    out = []
    for A in inst.slice_rep.action:
        out.append(Fraction(1, 2) * dot(A.apply(nu), og.apply(nu)))
    return tuple(out)


def dphi_n1(inst: ProblemInstance, nu: Vec, nudot: Vec) -> Vec:
    """Exact derivative of the quadratic slice momentum at nu, applied to nudot."""
    og = inst.slice_rep.omega.gram
    half = Fraction(1, 2)
    out = []
    for A in inst.slice_rep.action:
        out.append(half * dot(A.apply(nudot), og.apply(nu))
                   + half * dot(A.apply(nu), og.apply(nudot)))
    return tuple(out)


def omega_tube(inst: ProblemInstance, chain: SplittingChain, p: TubePoint,
               V1: TangentVector, V2: TangentVector,
               model: TangentModel | None = None) -> Fraction:
    """The tube 2-form at a slice point, evaluated exactly.

    Only points with group coordinate at the identity are accepted; by
    invariance nothing is lost, and the evaluation stays rational.
    """
    if not is_zero_vec(p.xi):
        raise OffSlice("omega_tube only evaluates at group coordinate zero")
    if model is None:
        model = build_model(chain, inst)
    L = inst.algebra

    xi1 = model.embed_u(V1.u)
    xi2 = model.embed_u(V2.u)

    def paired(rhodot: Vec, nudot: Vec, xi: Vec) -> Fraction:
        lam = model.iota_mstar(rhodot)
        dphi = model.iota_gmstar(dphi_n1(inst, p.nu, nudot))
        return dot(lam, xi) + dot(dphi, xi)

    term12 = paired(V2.rho, V2.nu, xi1) - paired(V1.rho, V1.nu, xi2)

    br = L.bracket(xi1, xi2)
    lam_point = model.iota_mstar(p.rho)
    lam_slice = model.iota_gmstar(phi_n1(inst, p.nu))
    term3 = dot(lam_point, br) + dot(lam_slice, br) + dot(inst.mu, br)

    og = inst.slice_rep.omega.gram
    term5 = dot(V1.nu, og.apply(V2.nu))

    return term12 + term3 + term5


def _to_float_rows(M: Matrix) -> list[list[float]]:
    return [[float(x) for x in row] for row in M.entries]


def _mat_mul(A: list[list[float]], B: list[list[float]]) -> list[list[float]]:
    n = len(A)
    return [[sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)]


def _mat_add(A, B):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def _mat_scale(c: float, A):
    return [[c * x for x in row] for row in A]


def _mat_norm(A) -> float:
    # Max absolute row sum (induced infinity norm).
    return max((sum(abs(x) for x in row) for row in A), default=0.0)


def _identity(n: int) -> list[list[float]]:
    return [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)]


def expm(A: list[list[float]], rel_tol: float = 1e-9) -> list[list[float]]:
    """Matrix exponential by scaling and squaring with a bounded series tail.

    After scaling so the norm is at most 1/2, the Taylor series is summed
    until the rigorous remainder bound  ||term|| / (1 - q)  with
    q = ||A|| / (k + 2) drops below the tolerance.
    """
    n = len(A)
    if n == 0:
        return []
    norm = _mat_norm(A)
    squarings = 0
    while norm > 0.5:
        squarings += 1
        norm /= 2.0
    S = _mat_scale(0.5 ** squarings, A)

    result = _identity(n)
    term = _identity(n)
    converged = False
    for k in range(1, 60):
        term = _mat_scale(1.0 / k, _mat_mul(term, S))
        result = _mat_add(result, term)
        tail = _mat_norm(term)
        q = _mat_norm(S) / (k + 2)
        if q < 1 and tail / (1 - q) <= rel_tol * max(1.0, _mat_norm(result)):
            converged = True
            break
    if not converged:
        raise SeriesNotConverged("exponential series tail bound not met")
    for _ in range(squarings):
        result = _mat_mul(result, result)
    return result


def phi_tilde(inst: ProblemInstance, chain: SplittingChain, p: TubePoint,
              tol: FloatTolerance = FloatTolerance(),
              model: TangentModel | None = None) -> tuple[float, ...]:
    """Normal-form momentum Ad*_{exp(-xi)}(mu + rho + Phi_N1(nu)), as floats.

    At xi = 0 the exponential is skipped and the returned floats are exact
    conversions of the rational covector.
    """
    if model is None:
        model = build_model(chain, inst)
    lam = list(inst.mu)
    for i, x in enumerate(model.iota_mstar(p.rho)):
        lam[i] += x
    for i, x in enumerate(model.iota_gmstar(phi_n1(inst, p.nu))):
        lam[i] += x
    if is_zero_vec(p.xi):
        return tuple(float(x) for x in lam)

    L = inst.algebra
    neg_ad = _to_float_rows(L.ad_matrix(p.xi).scale(Fraction(-1)))
    E = expm(neg_ad, tol.rel_tol)
    lamf = [float(x) for x in lam]
    # <Ad*_{exp(-xi)} lam, y> = <lam, exp(-ad_xi) y>: apply the transpose.
    n = inst.dim
    return tuple(sum(E[i][j] * lamf[i] for i in range(n)) for j in range(n))


def check_dphi_consistency(inst: ProblemInstance, chain: SplittingChain,
                           tol: FloatTolerance = FloatTolerance()) -> list[Check]:
    """Central differences of phi_tilde at the base against dphi_G."""
    model = build_model(chain, inst)
    step = Fraction(1, 10_000)
    dG = dphi_G(model)

    worst = 0.0
    worst_dir = -1
    for d in range(model.total_dim):
        plus = _point_along(model, d, step)
        minus = _point_along(model, d, -step)
        fp = phi_tilde(inst, chain, plus, tol, model)
        fm = phi_tilde(inst, chain, minus, tol, model)
        fd = [(a - b) / (2.0 * float(step)) for a, b in zip(fp, fm)]
        col = [float(dG.entries[i][d]) for i in range(inst.dim)]
        scale = max(1.0, max((abs(c) for c in col), default=0.0))
        err = max((abs(a - b) for a, b in zip(fd, col)), default=0.0) / scale
        if err > worst:
            worst, worst_dir = err, d
    return [Check(
        "tube.dphi_fd_consistency",
        worst <= tol.fd_tol,
        f"max relative error {worst:.3e} at direction {worst_dir}",
    )]


def _point_along(model: TangentModel, index: int, t: Fraction) -> TubePoint:
    v = model.unpack(tuple(
        t if i == index else ZERO for i in range(model.total_dim)))
    return TubePoint(xi=model.embed_u(v.u), rho=v.rho, nu=v.nu)


def phi_equivariance_check(inst: ProblemInstance, chain: SplittingChain,
                           samples: int,
                           tol: FloatTolerance = FloatTolerance(),
                           seed: int = 0) -> list[Check]:
    """Equivariance of the normal-form momentum on random points.

    Compares phi_tilde at [exp(xi), rho, nu] (exponential applied inside the
    evaluation) against the coadjoint matrix exponential applied to the
    momentum of [e, rho, nu]; the two float paths must agree to rel_tol.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    model = build_model(chain, inst)
    rng = random.Random(seed)

    def rand_frac() -> Fraction:
        return Fraction(rng.randint(-8, 8), rng.randint(1, 8))

    worst = 0.0
    L = inst.algebra
    for _ in range(samples):
        xi = tuple(rand_frac() for _ in range(inst.dim))
        rho = tuple(rand_frac() for _ in range(model.dim_m))
        nu = tuple(rand_frac() for _ in range(model.slice_dim))
        lhs = phi_tilde(inst, chain, TubePoint(xi, rho, nu), tol, model)
        base = phi_tilde(inst, chain,
                         TubePoint(zero_vec(inst.dim), rho, nu), tol, model)
        coad = _to_float_rows(L.coad_matrix(tuple(-x for x in xi)))
        M = expm(coad, tol.rel_tol)
        rhs = [sum(M[i][j] * base[j] for j in range(inst.dim))
               for i in range(inst.dim)]
        scale = max(1.0, max((abs(x) for x in rhs), default=0.0))
        dev = max((abs(a - b) for a, b in zip(lhs, rhs)), default=0.0) / scale
        worst = max(worst, dev)
    return [Check(
        "tube.equivariance",
        worst <= tol.rel_tol,
        f"max relative deviation {worst:.3e} over {samples} samples",
    )]
