"""Boundary matching: the tangential disc and its fixed-boundary family.

Two problems are solved here by shooting from the axis seed:

* the tangential disc through a prescribed circle (R, Z): find (c_o, z_o)
  with z_o < -1/c_o such that the profile integrated until phi = 0 ends at
  (R, Z); two unknowns, damped Newton with a finite-difference Jacobian and
  a coarse admissible-region grid restart as fallback;
* a family member at given spontaneous curvature c sharing the circle:
  find (z_o, L) such that the profile for (c, z_o) passes through (R, Z)
  at arc length L; the curve is truncated at the first passage and the
  contact angle phi(L) is reported.

Both problems are scale equivariant: (R, Z) -> (mu R, mu Z) maps solutions
to (c_o/mu, mu z_o).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ArcLimitReached,
    MembraneLabError,
    NoConvergence,
    SingularityHit,
)
from .profile import (
    ModelParams,
    StopCondition,
    integrate_profile,
    sigma0_stop,
)

#: integration tolerances used inside the shooting loops; tighter than the
#: profile defaults so the matched endpoint is trustworthy to ~1e-11
SHOOT_RTOL = 1e-12
SHOOT_ATOL = 1e-14

_MAX_NEWTON = 50
_MAX_HALVINGS = 8


@dataclass(frozen=True)
class BoundaryCircle:
    """Prescribed boundary circle of radius R at height Z < 0."""

    R: float
    Z: float

    def __post_init__(self):
        if not (self.R > 0.0):
            raise ValueError("boundary radius R must be positive")
        if not (self.Z < 0.0):
            raise ValueError("boundary height Z must be negative")


@dataclass(frozen=True)
class Sigma0Solution:
    """Tangential disc through a circle: parameters, curve and match data."""

    params: ModelParams
    curve: object
    boundary_phi: float
    match_residual: float
    circle: BoundaryCircle


@dataclass(frozen=True)
class FamilyMember:
    """Fixed-boundary family member at spontaneous curvature c."""

    c: float
    z_o: float
    curve: object
    contact_angle: float
    match_residual: float
    circle: BoundaryCircle
    left_admissible_region: bool


@dataclass(frozen=True)
class FamilySweep:
    """Result of a family sweep: converged members plus failure records."""

    members: list
    failures: list


def _default_seed(circle):
    """Heuristic starting point; the grid fallback repairs bad cases."""
    c_o = 1.5 * max(1.0 / abs(circle.Z), 1.0 / circle.R)
    z_o = circle.Z - circle.R
    if z_o >= -1.0 / c_o:
        z_o = -1.0 / c_o - 0.5 * circle.R
    return ModelParams(c_o, z_o)


def _sigma0_endpoint(c_o, z_o, *, rtol=SHOOT_RTOL, atol=SHOOT_ATOL):
    """Endpoint (r, z) of the phi -> 0 curve, or None when infeasible."""
    if c_o <= 0.0 or z_o >= -1.0 / c_o:
        return None
    try:
        curve = integrate_profile(
            ModelParams(c_o, z_o), sigma0_stop(), rtol=rtol, atol=atol
        )
    except (SingularityHit, ArcLimitReached, MembraneLabError):
        return None
    r_end, z_end, _ = curve.state_at(curve.ell)
    return curve, r_end, z_end


def _grid_reseed(circle, n=32):
    """Coarse logarithmic sweep of the admissible region; best mismatch wins."""
    best = None
    scale = max(circle.R, abs(circle.Z))
    c_grid = np.geomspace(0.05 / scale, 50.0 / scale, n)
    for c_o in c_grid:
        z_top = -1.0 / c_o
        lo = abs(circle.Z) * 4.0
        offsets = np.geomspace(1e-3 * scale, lo, n)
        for off in offsets:
            z_o = z_top - off
            if z_o <= circle.Z:
                continue
            out = _sigma0_endpoint(c_o, z_o, rtol=1e-8, atol=1e-10)
            if out is None:
                continue
            _, r_end, z_end = out
            miss = math.hypot(r_end - circle.R, z_end - circle.Z)
            if best is None or miss < best[0]:
                best = (miss, c_o, z_o)
    if best is None:
        raise NoConvergence("grid reseed found no feasible parameters")
    return best[1], best[2]


def shoot_sigma0(circle, seed=None, *, tol=None, rtol=SHOOT_RTOL, atol=SHOOT_ATOL):
    """Solve for the tangential disc spanning the circle.

    Damped Newton iteration on the endpoint mismatch (r_end - R, z_end - Z)
    over the unconstrained variables (log c_o, log(-z_o - 1/c_o)), which keep
    every iterate strictly inside the admissible region.  Convergence is
    declared when the mismatch norm drops below ``tol`` (default
    1e-11 * max(R, |Z|, 1)).
    """
    if tol is None:
        tol = 1e-11 * max(circle.R, abs(circle.Z), 1.0)
    if seed is None:
        seed = _default_seed(circle)
    u = np.array([math.log(seed.c_o), math.log(-seed.z_o - 1.0 / seed.c_o)])
    trace = []

    def params_of(u_vec):
        c_o = math.exp(u_vec[0])
        z_o = -1.0 / c_o - math.exp(u_vec[1])
        return c_o, z_o

    def mismatch(u_vec):
        c_o, z_o = params_of(u_vec)
        out = _sigma0_endpoint(c_o, z_o, rtol=rtol, atol=atol)
        if out is None:
            return None, None
        curve, r_end, z_end = out
        return np.array([r_end - circle.R, z_end - circle.Z]), curve

    F, curve = mismatch(u)
    reseeded = False
    for iteration in range(_MAX_NEWTON):
        if F is None:
            if reseeded:
                raise NoConvergence("infeasible iterate after grid restart", trace)
            c_o, z_o = _grid_reseed(circle)
            u = np.array([math.log(c_o), math.log(-z_o - 1.0 / c_o)])
            F, curve = mismatch(u)
            reseeded = True
            continue
        norm = float(np.max(np.abs(F)))
        trace.append((params_of(u), norm))
        if norm < tol:
            r_end, z_end, phi_end = curve.state_at(curve.ell)
            c_o, z_o = params_of(u)
            return Sigma0Solution(
                params=ModelParams(c_o, z_o),
                curve=curve,
                boundary_phi=float(phi_end),
                match_residual=norm,
                circle=circle,
            )
        J = np.empty((2, 2))
        step = 1e-6
        jac_ok = True
        for j in range(2):
            du = np.zeros(2)
            du[j] = step * max(1.0, abs(u[j]))
            Fp, _ = mismatch(u + du)
            if Fp is None:
                Fp, _ = mismatch(u - du)
                if Fp is None:
                    jac_ok = False
                    break
                J[:, j] = (F - Fp) / du[j]
            else:
                J[:, j] = (Fp - F) / du[j]
        if not jac_ok:
            F = None
            continue
        try:
            delta = np.linalg.solve(J, -F)
        except np.linalg.LinAlgError:
            F = None
            continue
        # damped update: halve until the residual actually decreases
        lam = 1.0
        for _ in range(_MAX_HALVINGS):
            F_new, curve_new = mismatch(u + lam * delta)
            if F_new is not None and np.max(np.abs(F_new)) < norm:
                break
            lam *= 0.5
        else:
            if reseeded:
                raise NoConvergence(
                    f"damping stalled at mismatch {norm:.3e}", trace
                )
            c_o, z_o = _grid_reseed(circle)
            u = np.array([math.log(c_o), math.log(-z_o - 1.0 / c_o)])
            F, curve = mismatch(u)
            reseeded = True
            continue
        u = u + lam * delta
        F, curve = F_new, curve_new
    raise NoConvergence(f"no convergence after {_MAX_NEWTON} iterations", trace)


def _member_state(c, z_o, length, *, rtol, atol):
    """Integrate a candidate member out to ``length`` and return the curve."""
    guard = max(2.5 * length, 10.0 * abs(z_o))
    return integrate_profile(
        ModelParams(c, z_o),
        StopCondition.at_arc_length(length, max_arc=guard),
        rtol=rtol,
        atol=atol,
    )


def shoot_family_member(c, circle, seed, *, tol=None, rtol=SHOOT_RTOL,
                        atol=SHOOT_ATOL, max_step=None):
    """Family member at curvature c through the circle, seeded by continuation.

    Newton iteration on (z_o, L) for the two conditions r(L) = R, z(L) = Z.
    The L-column of the Jacobian is analytic (the curve velocity); the
    z_o-column is one finite-difference reintegration.  Members may leave
    the tangential-disc admissible region; that is recorded, not fatal.

    The (z_o, L) problem at fixed c has multiple solutions away from the
    seed; to return the continuation-connected member the solve walks from
    the seed curvature in sub-steps of at most ``max_step`` (default 3
    percent of the seed curvature) and re-seeds each step from the last.
    """
    if tol is None:
        tol = 1e-11 * max(circle.R, abs(circle.Z), 1.0)
    c_seed = seed.params.c_o if isinstance(seed, Sigma0Solution) else seed.c
    if max_step is None:
        max_step = 0.03 * abs(c_seed)
    if abs(c - c_seed) > max_step:
        n_sub = int(math.ceil(abs(c - c_seed) / max_step))
        member = seed
        for c_mid in np.linspace(c_seed, c, n_sub + 1)[1:]:
            member = shoot_family_member(
                float(c_mid), circle, member, tol=tol, rtol=rtol, atol=atol,
                max_step=math.inf,
            )
        return member
    z_o = seed.params.z_o if isinstance(seed, Sigma0Solution) else seed.z_o
    L = seed.curve.ell
    trace = []

    def endpoint(z_val, length):
        try:
            curve = _member_state(c, z_val, length, rtol=rtol, atol=atol)
        except (SingularityHit, ArcLimitReached, MembraneLabError):
            return None
        r_end, z_end, phi_end = curve.state_at(length)
        return curve, np.array([r_end - circle.R, z_end - circle.Z]), phi_end

    out = endpoint(z_o, L)
    if out is None:
        raise NoConvergence(f"member seed infeasible at c = {c}", trace)
    curve, F, phi_end = out
    for iteration in range(_MAX_NEWTON):
        norm = float(np.max(np.abs(F)))
        trace.append(((z_o, L), norm))
        if norm < tol:
            final = _member_state(c, z_o, L, rtol=rtol, atol=atol)
            r_end, z_end, phi_L = final.state_at(L)
            return FamilyMember(
                c=c,
                z_o=z_o,
                curve=final,
                contact_angle=float(phi_L),
                match_residual=norm,
                circle=circle,
                left_admissible_region=not ModelParams(c, z_o).sigma0_admissible,
            )
        # analytic L-column: d endpoint / dL = (-cos phi, -sin phi)
        JL = np.array([-math.cos(phi_end), -math.sin(phi_end)])
        dz = 1e-6 * max(1.0, abs(z_o))
        out_p = endpoint(z_o + dz, L)
        if out_p is None:
            out_p = endpoint(z_o - dz, L)
            if out_p is None:
                raise NoConvergence("Jacobian evaluation infeasible", trace)
            Jz = (F - out_p[1]) / dz
        else:
            Jz = (out_p[1] - F) / dz
        J = np.column_stack([Jz, JL])
        try:
            delta = np.linalg.solve(J, -F)
        except np.linalg.LinAlgError:
            raise NoConvergence("singular member Jacobian", trace)
        lam = 1.0
        for _ in range(_MAX_HALVINGS):
            z_new = z_o + lam * delta[0]
            L_new = L + lam * delta[1]
            out_new = endpoint(z_new, L_new) if z_new < 0 and L_new > 0 else None
            if out_new is not None and np.max(np.abs(out_new[1])) < norm:
                break
            lam *= 0.5
        else:
            raise NoConvergence(f"member damping stalled at {norm:.3e}", trace)
        z_o, L = z_new, L_new
        curve, F, phi_end = out_new
    raise NoConvergence(f"member did not converge at c = {c}", trace)


def family_sweep(circle, c_min, c_max, n, *, sigma0=None, **kw):
    """n members by continuation outward from the tangential disc.

    The c grid is uniform on [c_min, c_max], which must bracket the
    tangential-disc curvature.  Failures are recorded per member and do not
    abort the sweep; members are returned sorted by c.
    """
    if sigma0 is None:
        sigma0 = shoot_sigma0(circle)
    c0 = sigma0.params.c_o
    if not (c_min <= c0 <= c_max):
        raise ValueError("sweep range must bracket the tangential-disc curvature")
    cs = np.linspace(c_min, c_max, n)
    members = {}
    failures = []
    for direction in (1, -1):
        seed = sigma0
        order = np.argsort(direction * cs)
        for idx in order:
            c = float(cs[idx])
            if direction * (c - c0) < 0 or idx in members:
                continue
            try:
                member = shoot_family_member(c, circle, seed, **kw)
            except NoConvergence as exc:
                failures.append((c, str(exc)))
                continue
            members[idx] = member
            seed = member
    ordered = [members[i] for i in sorted(members)]
    return FamilySweep(members=ordered, failures=failures)
