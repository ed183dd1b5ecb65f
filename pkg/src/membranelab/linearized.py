"""Linearized radial problems along a tangential-disc profile.

The normal variation of xi = H + nu3/z around a solution surface is governed
by the scalar operator (s = boundary-based arc length, sigma)

    P[u] = u_ss + C u_s + D u,
    C    = cos(phi)/r - 2 sin(phi)/z,
    D    = |dN|^2 - 2 (cos(phi)/z)^2,      |dN|^2 = 4H^2 - 2K,

which is the axisymmetric part of z^2 (div(z^-2 grad u) + U u) with
U = D / z^2.  Exact identities used as cross-checks throughout:

    P[nu3] + 2 nu3 / z^2 = 0        (vertical translation invariance)
    P[q]   = 2 c_o                  (scaling of the embedding)

and, through horizontal translation invariance, sin(phi) solves the
separated first angular mode of P at eigenvalue zero.

This module solves the radial kernel P[psi] = 0 (normalized to 1 at the
boundary) and the displacement response P[h] = -2 with h = 0 on the
boundary, by augmenting the profile system with (h, w = h_s) and starting
from an even power series at the axis.  The boundary slope of h in the
boundary-based orientation, h_prime_boundary, is the transversality scalar
of the bifurcation certificate.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from ._util import fd1, fd2, fd_interior_slice
from .errors import AxisSingularity, BoundaryValueVanishes
from .profile import (
    _safe_sin_over_r,
    axis_seed,
    geometry_at,
    integrate_profile,
    sigma0_stop,
)
from .shooting import shoot_family_member, shoot_sigma0


@dataclass(frozen=True)
class LinearizedCoeffs:
    """Samples of the radial operator data along a profile.

    U is the potential of the divergence form, weight = r/z^2 the measure
    density making the operator self adjoint, and p_coeff = r/z^2 the flux
    coefficient of the separated problems.
    """

    taus: np.ndarray
    U: np.ndarray
    weight: np.ndarray
    p_coeff: np.ndarray


@dataclass(frozen=True)
class KernelSolution:
    """Radial kernel psi of P (normalized to psi = 1 at the boundary)."""

    taus: np.ndarray
    psi: np.ndarray
    w: np.ndarray  # boundary-oriented derivative psi_s
    raw_boundary_value: float
    _dense: object = field(repr=False)

    def psi_at(self, tau):
        vals = self._dense(np.asarray(tau, dtype=float))
        return vals[3] / self.raw_boundary_value

    def w_at(self, tau):
        vals = self._dense(np.asarray(tau, dtype=float))
        return vals[4] / self.raw_boundary_value


@dataclass(frozen=True)
class LinearizedSolution:
    """Kernel psi, response h of P[h] = -2 with h(boundary) = 0, and slopes.

    w holds h_s in the boundary-based orientation; h_prime_boundary is its
    boundary value (the transversality scalar).  alpha is the kernel
    admixture used to enforce the boundary condition on h.
    """

    taus: np.ndarray
    psi: np.ndarray
    h: np.ndarray
    w: np.ndarray
    h_prime_boundary: float
    alpha: float
    kernel: KernelSolution
    _dense: object = field(repr=False)

    @property
    def ell(self):
        return float(self.taus[-1])

    def h_at(self, tau):
        vals = self._dense(np.asarray(tau, dtype=float))
        return vals[5] + self.alpha * vals[3]

    def w_at(self, tau):
        vals = self._dense(np.asarray(tau, dtype=float))
        return vals[6] + self.alpha * vals[4]


def radial_operator_coeffs(r, z, phi, params):
    """(C, D): first order and potential coefficients of P at given states."""
    sor = _safe_sin_over_r(r, z, phi, params)
    s = np.sin(phi)
    c = np.cos(phi)
    phi_s = -2.0 * c / z - sor + 2.0 * params.c_o
    C = c / np.where(np.asarray(r) > 0, r, np.inf) - 2.0 * s / z
    D = sor * sor + phi_s * phi_s - 2.0 * (c / z) ** 2
    return C, D


def linearized_coeffs(curve, taus):
    r, z, phi = curve.state_at(taus)
    _, D = radial_operator_coeffs(r, z, phi, curve.params)
    return LinearizedCoeffs(
        taus=np.asarray(taus, dtype=float),
        U=D / (z * z),
        weight=r / (z * z),
        p_coeff=r / (z * z),
    )


def extended_rhs(state, params):
    """Boundary-oriented derivatives of the profile-plus-response system.

    ``state`` is (r, z, phi, h, w); the return value is (r_s, z_s, phi_s,
    h_s, w_s) with s the boundary-based arc length.  The last two rows carry
    the second order equation P[h] = -2 in first order form:

        w_s = -(|dN|^2 - 2 (cos(phi)/z)^2) h - (cos(phi)/r - 2 sin(phi)/z) w - 2.
    """
    r, z, phi, h, w = state
    if r == 0.0:
        raise AxisSingularity("extended system evaluated at r = 0")
    c = math.cos(phi)
    s = math.sin(phi)
    phi_s = -2.0 * c / z - s / r + 2.0 * params.c_o
    sff = (s / r) ** 2 + phi_s * phi_s
    D = sff - 2.0 * (c / z) ** 2
    C = c / r - 2.0 * s / z
    return np.array([c, s, phi_s, w, -D * h - C * w - 2.0])


def _axis_series_coefficients(params, inhom):
    """Quadratic axis coefficient u2 of an even start u = u0 + u2 tau^2.

    Near the axis P reduces to u'' + u'/tau + D(0) u with
    D(0) = 2 a^2 - 2/z_o^2, so 4 u2 + D(0) u0 = -inhom.
    """
    a = params.axis_curvature
    D0 = 2.0 * a * a - 2.0 / (params.z_o * params.z_o)
    return D0, lambda u0: -(inhom + D0 * u0) / 4.0


def _integrate_extended(curve, *, rtol=None, atol=None, tau0=None):
    """Co-integrate profile, kernel and particular response from the axis.

    State layout: (r, z, phi, psi, w_psi, p, w_p) in the from-axis parameter
    tau; w-components store boundary-oriented derivatives, so the tau
    derivatives of the linear states are negated relative to extended_rhs.
    """
    params = curve.params
    # tighter than the profile defaults: downstream finite-difference
    # recomputations of P[h] + 2 divide dense-output noise by h^2
    if rtol is None:
        rtol = min(curve.rtol, 1e-13)
    if atol is None:
        atol = min(curve.atol, 1e-15)
    if tau0 is None:
        tau0 = curve.tau0
    seed = axis_seed(params, tau0)
    D0, u2_of = _axis_series_coefficients(params, inhom=0.0)
    psi2 = u2_of(1.0)
    p2 = -0.5  # from 4 u2 = -2 with u0 = 0
    y0 = (
        seed.r,
        seed.z,
        seed.phi,
        1.0 + psi2 * tau0 * tau0,
        -2.0 * psi2 * tau0,
        p2 * tau0 * tau0,
        -2.0 * p2 * tau0,
    )
    c_o = params.c_o

    def rhs(tau, y):
        r, z, phi, psi, wpsi, p, wp = y
        c = math.cos(phi)
        s = math.sin(phi)
        sor = s / r
        phi_s = -2.0 * c / z - sor + 2.0 * c_o
        D = sor * sor + phi_s * phi_s - 2.0 * (c / z) ** 2
        C = c / r - 2.0 * s / z
        # tau runs against the boundary orientation: negate every s-derivative
        return (
            -c,
            -s,
            -phi_s,
            -wpsi,
            D * psi + C * wpsi,
            -wp,
            D * p + C * wp + 2.0,
        )

    sol = solve_ivp(
        rhs,
        (tau0, curve.ell),
        y0,
        method="DOP853",
        dense_output=True,
        rtol=rtol,
        atol=atol,
        max_step=0.1 * abs(params.z_o),
    )
    if not sol.success:
        raise BoundaryValueVanishes(f"extended integration failed: {sol.message}")
    return sol


def solve_axisymmetric_kernel(curve, **kw):
    """Radial kernel of P along the curve, normalized to 1 at the boundary.

    The raw solution starts from psi = 1 at the axis with the even series
    start; its boundary value must not vanish (the radial kernel meets the
    boundary nontrivially), and a vanishing value is reported as a numerical
    failure rather than absorbed.
    """
    sol = _integrate_extended(curve, **kw)
    raw_b = float(sol.y[3, -1])
    scale = float(np.max(np.abs(sol.y[3])))
    if abs(raw_b) < 1e-10 * scale:
        raise BoundaryValueVanishes(
            "radial kernel vanished at the boundary within tolerance"
        )
    return KernelSolution(
        taus=sol.t,
        psi=sol.y[3] / raw_b,
        w=sol.y[4] / raw_b,
        raw_boundary_value=raw_b,
        _dense=sol.sol,
    )


def solve_h(curve, **kw):
    """Response h of P[h] = -2 vanishing at the boundary, by superposition.

    h = p + alpha * psi_raw with the particular solution p starting from
    p(axis) = 0 and alpha = -p(boundary)/psi_raw(boundary).  The reported
    slope h_prime_boundary is taken in the boundary-based orientation.
    """
    sol = _integrate_extended(curve, **kw)
    raw_b = float(sol.y[3, -1])
    scale = float(np.max(np.abs(sol.y[3])))
    if abs(raw_b) < 1e-10 * scale:
        raise BoundaryValueVanishes(
            "radial kernel vanished at the boundary within tolerance"
        )
    kernel = KernelSolution(
        taus=sol.t,
        psi=sol.y[3] / raw_b,
        w=sol.y[4] / raw_b,
        raw_boundary_value=raw_b,
        _dense=sol.sol,
    )
    alpha = -float(sol.y[5, -1]) / raw_b
    h = sol.y[5] + alpha * sol.y[3]
    w = sol.y[6] + alpha * sol.y[4]
    return LinearizedSolution(
        taus=sol.t,
        psi=kernel.psi,
        h=h,
        w=w,
        h_prime_boundary=float(w[-1]),
        alpha=alpha,
        kernel=kernel,
        _dense=sol.sol,
    )


def h_from_support(curve, kernel):
    """Closed-form h from the support function: (q(0) psi - q) / c_o.

    q(0) is the boundary value of the support function q = r sin(phi)
    - z cos(phi) and psi the normalized kernel.  Independent of solve_h
    except for sharing psi, this follows from P[q] = 2 c_o and serves as an
    oracle for the integrated response.
    """
    g = geometry_at(curve, kernel.taus)
    q_b = float(geometry_at(curve, curve.ell).q)
    return (q_b * kernel.psi - g.q) / curve.params.c_o


def operator_residual(curve, taus, values, inhom=0.0, mode=0):
    """Finite-difference sup residual of P[u] + inhom (mode m adds -m^2 u/r^2).

    ``values`` must be samples of u on the uniform grid ``taus``; the
    derivative signs account for taus being axis-based while P is written in
    the boundary orientation.
    """
    taus = np.asarray(taus, dtype=float)
    h = taus[1] - taus[0]
    r, z, phi = curve.state_at(taus)
    C, D = radial_operator_coeffs(r, z, phi, curve.params)
    u_t = fd1(values, h)
    u_tt = fd2(values, h)
    res = u_tt - C * u_t + D * values + inhom
    if mode:
        res = res - mode * mode * values / (r * r)
    keep = fd_interior_slice(taus.size)
    return float(np.max(np.abs(res[keep])))


def residual_Pnu3(curve, n=1000):
    """Sup residual of the exact identity P[nu3] + 2 nu3/z^2 = 0.

    Evaluated by finite differences of nu3 = -cos(phi) on a uniform interior
    window; a perturbed nu3 drives the residual to O(1), so this check is a
    sensitive probe of the operator coefficients.  The default resample is
    deliberately moderate: the stencils are 4th order so truncation is
    negligible, while dense-output interpolation noise grows like 1/h^2.
    """
    a = 0.02 * curve.ell
    b = 0.98 * curve.ell
    taus = np.linspace(a, b, n)
    _, z, phi = curve.state_at(taus)
    nu3 = -np.cos(phi)
    h = taus[1] - taus[0]
    r, z, phi = curve.state_at(taus)
    C, D = radial_operator_coeffs(r, z, phi, curve.params)
    res = fd2(nu3, h) - C * fd1(nu3, h) + D * nu3 + 2.0 * nu3 / (z * z)
    keep = fd_interior_slice(n)
    return float(np.max(np.abs(res[keep])))


@dataclass(frozen=True)
class FamilyDerivativeCheck:
    """Convergence study of the fixed-boundary family derivative against h."""

    delta: float
    rel_error: float
    rel_error_half: float
    observed_order: float
    sigma_grid: np.ndarray
    derivative: np.ndarray
    h_reference: np.ndarray


def _normal_displacement(sigma0_curve, member_curve, sigmas):
    """Normal projection of member - base at matched boundary-based arc length."""
    base_tau = sigma0_curve.ell - sigmas
    memb_tau = member_curve.ell - sigmas
    rb, zb, pb = sigma0_curve.state_at(base_tau)
    rm, zm, _ = member_curve.state_at(memb_tau)
    # outward unit normal of the base profile
    nr = np.sin(pb)
    nz = -np.cos(pb)
    return (rm - rb) * nr + (zm - zb) * nz


def family_derivative_check(circle, delta, *, sigma0=None, lin=None, n_eval=400):
    """Central-difference derivative of the fixed-boundary family versus h.

    Members at spontaneous curvature c +/- delta (and +/- delta/2) are shot
    with the shared boundary circle; their normal displacement relative to
    the tangential disc, divided by 2 delta, is compared with h on a matched
    boundary-based arc-length grid.  Reports the relative sup error at delta
    and the Richardson order between delta and delta/2.
    """
    if sigma0 is None:
        sigma0 = shoot_sigma0(circle)
    if lin is None:
        lin = solve_h(sigma0.curve)
    c0 = sigma0.params.c_o

    def derivative_at(d):
        plus = shoot_family_member(c0 + d, circle, sigma0)
        minus = shoot_family_member(c0 - d, circle, sigma0)
        max_sigma = min(sigma0.curve.ell, plus.curve.ell, minus.curve.ell)
        sigmas = np.linspace(0.0, max_sigma, n_eval)
        fp = _normal_displacement(sigma0.curve, plus.curve, sigmas)
        fm = _normal_displacement(sigma0.curve, minus.curve, sigmas)
        return sigmas, (fp - fm) / (2.0 * d)

    sigmas, deriv = derivative_at(delta)
    h_ref = lin.h_at(sigma0.curve.ell - sigmas)
    scale = float(np.max(np.abs(h_ref)))
    err = float(np.max(np.abs(deriv - h_ref))) / scale
    sig_half, deriv_half = derivative_at(0.5 * delta)
    h_half = lin.h_at(sigma0.curve.ell - sig_half)
    err_half = float(np.max(np.abs(deriv_half - h_half))) / scale
    order = math.log2(err / err_half) if err_half > 0 else math.inf
    return FamilyDerivativeCheck(
        delta=delta,
        rel_error=err,
        rel_error_half=err_half,
        observed_order=order,
        sigma_grid=sigmas,
        derivative=deriv,
        h_reference=h_ref,
    )
