"""Quadrature verification of the integral identities.

Each identity equates boundary flux terms on level spheres with a bulk
integral over the region between them.  In the rotationally symmetric
setting the flux terms are closed-form sphere values and every bulk
integral reduces to one radial quadrature against the sphere-area density;
integration is always performed in the native radial coordinate with its
arclength Jacobian, never in the conformal level coordinate (whose
parametrization degenerates at the extremal sphere).

Conventions: phi denotes the conformal level coordinate, W = |grad phi|_g^2,
and for a level value tau the weights are

    1/sinh(phi)^n  =  (1-u^2)^(n/2) / u^n     (positive constant)
                   =  (u^2-1)^(n/2)           (negative constant)
    gamma(phi)     =  |1-u^2|^((n+2)/2) / u   (both cases)
    coth(phi)      =  1/u  or  u.
"""

from __future__ import annotations

from typing import Callable, Optional

from .conformal import hess_phi_radial, mean_curvature_g0
from .geometry import (
    StaticTriple,
    boundary_scalar_curvature,
    unit_sphere_area,
    warped_curvature,
)
from .levelset import (
    assumption_flags,
    conformal_boundary_data,
    level_radii,
    sphere_data,
    t_of_s,
)
from .quadrature import QuadratureConfig, QuadResult, adaptive, composite_simpson
from .report import IdentityReport, identity_report, inequality_report

DEFAULT_QUAD = QuadratureConfig(abs_tol=1e-9, rel_tol=1e-9, max_evals=100_000)


def _inv_sinh_n(triple: StaticTriple, u: float) -> float:
    if triple.lambda_sign > 0:
        return (1.0 - u * u) ** (triple.n / 2.0) / u ** triple.n
    return (u * u - 1.0) ** (triple.n / 2.0)


def _coth_phi(triple: StaticTriple, u: float) -> float:
    return 1.0 / u if triple.lambda_sign > 0 else u


def _integrate(f: Callable[[float], float], a: float, b: float,
               config: Optional[QuadratureConfig],
               panels: Optional[int]) -> QuadResult:
    if panels is not None:
        return composite_simpson(f, a, b, panels)
    return adaptive(f, a, b, config or DEFAULT_QUAD)


def _volume_density(triple: StaticTriple, x: float) -> float:
    """g0 volume per unit radial coordinate: |S^(n-1)| h^(n-1) drho/dx."""
    st = triple.radial_state(x)
    return unit_sphere_area(triple.n) * st.h ** (triple.n - 1) \
        * triple.arclength_jacobian(x)


def _conformal_region(triple: StaticTriple, s: float, S: float,
                      branch: Optional[str]) -> tuple[float, float]:
    """Radial interval corresponding to the slab {s < phi < S} on a branch."""
    if not 0.0 < s < S:
        raise ValueError("need 0 < s < S")
    xs = level_radii(triple, t_of_s(s, triple.lambda_sign), branch)
    xS = level_radii(triple, t_of_s(S, triple.lambda_sign), branch)
    if len(xs) != 1 or len(xS) != 1:
        raise ValueError("conformal slab must meet a single monotone branch; "
                         "pass branch='inner' or 'outer'")
    return min(xs[0], xS[0]), max(xs[0], xS[0])


def first_identity_flux(triple: StaticTriple, p: float, tau: float,
                        branch: Optional[str] = None) -> float:
    """Flux term of the first identity at the level {phi = tau}:
    integral of W^(p/2) / sinh(phi)^n over the level, w.r.t. the conformal
    area element.  Stays finite arbitrarily close to the extremal value, so
    it is computed from the radial state alone."""
    t = t_of_s(tau, triple.lambda_sign)
    n = triple.n
    total = 0.0
    for x in level_radii(triple, t, branch):
        st = triple.radial_state(x)
        d = triple.lambda_sign * (1.0 - st.u ** 2)
        area_g = unit_sphere_area(n) * st.h ** (n - 1) / d ** ((n - 1) / 2.0)
        w_norm = st.du ** 2 / d
        total += w_norm ** (p / 2.0) * area_g * _inv_sinh_n(triple, st.u)
    return total


def first_identity(triple: StaticTriple, p: float, s: float, S: float,
                   branch: Optional[str] = None,
                   config: Optional[QuadratureConfig] = None,
                   panels: Optional[int] = None,
                   tolerance: float = 1e-6) -> IdentityReport:
    """Divergence identity for the field W^((p-1)/2) grad phi / sinh(phi)^n
    on the slab {s < phi < S}:

        flux(S) - flux(s)  =  bulk integral of
        W^((p-3)/2) [ (p-1) hess phi(grad phi, grad phi) + W lap phi
                      - n coth(phi) W^2 ] / sinh(phi)^n.

    Valid for every p >= 1.
    """
    if p < 1:
        raise ValueError("asserted for p >= 1")
    lhs = (first_identity_flux(triple, p, S, branch)
           - first_identity_flux(triple, p, s, branch))
    a, b = _conformal_region(triple, s, S, branch)

    def integrand(x: float) -> float:
        sp = sphere_data(triple, x)
        state = sp.conformal
        hess_term = sp.W * hess_phi_radial(triple, x)
        core = ((p - 1) * hess_term + sp.W * state.lap_phi
                - triple.n * _coth_phi(triple, sp.u) * sp.W ** 2)
        d = triple.lambda_sign * (1.0 - sp.u ** 2)
        return (sp.W ** ((p - 3) / 2.0) * core * _inv_sinh_n(triple, sp.u)
                * _volume_density(triple, x) / d ** (triple.n / 2.0))

    quad = _integrate(integrand, a, b, config, panels)
    return identity_report(
        name=f"first_integral_identity(p={p}, s={s}, S={S})",
        lhs=lhs, rhs=quad.value, tolerance=tolerance,
        assumptions=assumption_flags(triple),
        description="weighted gradient-flux divergence identity on a "
                    "conformal slab",
        extra={"evaluations": quad.evaluations, "branch": branch or "full"})


def second_identity(triple: StaticTriple, p: float, s: float, S: float,
                    branch: Optional[str] = None,
                    config: Optional[QuadratureConfig] = None,
                    panels: Optional[int] = None,
                    tolerance: float = 1e-6) -> IdentityReport:
    """Weighted Bochner identity for p >= 3 on the slab {s < phi < S}:

        gamma(s) B(s) - gamma(S) B(S)  =  bulk integral of
        gamma(phi) W^((p-3)/2) [ |hess phi|^2 + (p-3) |grad |grad phi||^2
                                 + n u^2 W (1 - W) ],

    where B(tau) integrates W^((p-1)/2) H_g - W^((p-2)/2) lap phi over the
    level.  The right side is nonnegative under the gradient estimate, which
    is what makes the level integrals monotone.
    """
    if p < 3:
        raise ValueError("asserted for p >= 3")

    def weighted_boundary(tau: float) -> float:
        t = t_of_s(tau, triple.lambda_sign)
        total = 0.0
        for x in level_radii(triple, t, branch):
            sp = sphere_data(triple, x)
            state = sp.conformal
            total += sp.area_g * state.gamma * (
                sp.W ** ((p - 1) / 2.0) * state.H_g
                - sp.W ** ((p - 2) / 2.0) * state.lap_phi)
        return total

    lhs = weighted_boundary(s) - weighted_boundary(S)
    a, b = _conformal_region(triple, s, S, branch)

    def integrand(x: float) -> float:
        sp = sphere_data(triple, x)
        state = sp.conformal
        grad_gradphi2 = hess_phi_radial(triple, x) ** 2
        core = (state.hess_phi_norm2 + (p - 3) * grad_gradphi2
                + triple.n * sp.u ** 2 * sp.W * (1.0 - sp.W))
        d = triple.lambda_sign * (1.0 - sp.u ** 2)
        return (state.gamma * sp.W ** ((p - 3) / 2.0) * core
                * _volume_density(triple, x) / d ** (triple.n / 2.0))

    quad = _integrate(integrand, a, b, config, panels)
    return identity_report(
        name=f"second_integral_identity(p={p}, s={s}, S={S})",
        lhs=lhs, rhs=quad.value, tolerance=tolerance,
        assumptions=assumption_flags(triple),
        description="weighted Bochner divergence identity on a conformal "
                    "slab",
        extra={"evaluations": quad.evaluations, "branch": branch or "full"})


def _deficit_flux(triple: StaticTriple, t: float) -> float:
    """Flux integrand of the curvature-deficit identity on {u = t}:
    sum over the level of (1/u)(|Du|^2 H - ((n-1)/n) |Du| lap u)."""
    n = triple.n
    total = 0.0
    for x in level_radii(triple, t):
        st = triple.radial_state(x)
        curv = warped_curvature(triple, x)
        area = unit_sphere_area(n) * st.h ** (n - 1)
        h_mean = mean_curvature_g0(triple, x)
        total += area / st.u * (st.du ** 2 * h_mean
                                - (n - 1) / n * abs(st.du) * curv.lap_u)
    return total


def curvature_deficit_identity(triple: StaticTriple, t: float,
                 t_upper: Optional[float] = None,
                 config: Optional[QuadratureConfig] = None,
                 panels: Optional[int] = None,
                 tolerance: float = 1e-6) -> IdentityReport:
    """Curvature-deficit flux identity (no assumptions needed):

        sum_{u=t} (1/u)(|Du|^2 H - ((n-1)/n)|Du| lap u)
            =  +- integral over the enclosed region of
               (1/u)(|D2u|^2 - (lap u)^2 / n),

    with + over {u > t} (positive constant; the region crosses the extremal
    sphere, where the integrand stays finite) and - over {u < t} (negative
    constant).  With t_upper given, the truncated version over
    {t < u < t_upper} subtracts the upper flux instead.
    """
    n = triple.n

    def integrand(x: float) -> float:
        st = triple.radial_state(x)
        curv = warped_curvature(triple, x)
        return (1.0 / st.u) * (curv.hess_u_norm2 - curv.lap_u ** 2 / n) \
            * _volume_density(triple, x)

    lhs = _deficit_flux(triple, t)
    radii = level_radii(triple, t)
    lo_dom, hi_dom = triple.domain
    inset = 1e-9 * (hi_dom - lo_dom)
    if t_upper is not None:
        lhs -= _deficit_flux(triple, t_upper)
        radii_up = level_radii(triple, t_upper)
        sign = 1.0
        if len(radii) == 2 and len(radii_up) == 2:
            # one sub-annulus per monotone branch
            q1 = _integrate(integrand, radii[0], radii_up[0], config, panels)
            q2 = _integrate(integrand, radii_up[1], radii[1], config, panels)
            rhs = q1.value + q2.value
            evals = q1.evaluations + q2.evaluations
        elif len(radii) == 1 and len(radii_up) == 1:
            a, b = sorted((radii[0], radii_up[0]))
            q = _integrate(integrand, a, b, config, panels)
            rhs, evals = q.value, q.evaluations
        else:
            raise ValueError("levels straddle the extremal sphere unevenly")
    elif len(radii) == 2:
        sign = 1.0 if triple.lambda_sign > 0 else -1.0
        q = _integrate(integrand, radii[0], radii[1], config, panels)
        rhs, evals = q.value, q.evaluations
    else:
        # region between the level and the extremum-side end of the domain
        sign = 1.0 if triple.lambda_sign > 0 else -1.0
        (x0,) = radii
        xstar = triple.extremum.location
        a, b = sorted((x0, xstar))
        a = max(a, lo_dom + inset)
        b = min(b, hi_dom - inset)
        q = _integrate(integrand, a, b, config, panels)
        rhs, evals = q.value, q.evaluations
    return identity_report(
        name=f"curvature_deficit_identity(t={t}"
             + (f", t_upper={t_upper})" if t_upper is not None else ")"),
        lhs=lhs, rhs=sign * rhs, tolerance=tolerance,
        assumptions=assumption_flags(triple),
        description="flux of the trace-free Hessian deficit field against "
                    "its bulk integral",
        extra={"evaluations": evals})


def boundary_curvature_inequality(triple: StaticTriple,
                            tolerance: float = 1e-9) -> IdentityReport:
    """Boundary form of the curvature-deficit identity.

    Positive constant:  integral over the horizon of
    |Du| [(n-1)(n-2) - R_bdry] <= 0, i.e. the weighted boundary scalar
    curvature dominates its round value; equality exactly in the round
    rigid case.  Negative constant: the conformal-boundary counterpart
    integral of [(n-1)(n-2) - R_g_bdry] >= 0 under the vanishing gradient
    limit, with equality in the rigid case.
    """
    n = triple.n
    if triple.lambda_sign > 0:
        if not triple.boundaries:
            raise ValueError("triple has no boundary")
        lhs = rhs = 0.0
        for c in triple.boundaries:
            area = unit_sphere_area(n) * c.sphere_radius ** (n - 1)
            lhs += c.surface_gravity * (n - 1) * (n - 2) * area
            rhs += c.surface_gravity * boundary_scalar_curvature(n, c) * area
        return inequality_report(
            name="boundary_curvature_inequality", lhs=lhs, rhs=rhs,
            tolerance=tolerance, assumptions=assumption_flags(triple),
            description="horizon-weighted boundary scalar curvature vs its "
                        "round value",
            extra={"value": rhs - lhs})
    bdry = conformal_boundary_data(triple)
    lhs = bdry.scalar_g_boundary * bdry.area_g
    rhs = (n - 1) * (n - 2) * bdry.area_g
    flags = assumption_flags(triple)
    return inequality_report(
        name="boundary_curvature_inequality", lhs=lhs, rhs=rhs,
        tolerance=tolerance, assumptions=flags,
        applicable=flags.get("gradient_limit_zero", False),
        description="conformal-boundary scalar curvature vs its round value",
        extra={"value": rhs - lhs})
