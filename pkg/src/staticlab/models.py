"""Closed-form static solution families.

All constructors normalise the potential so that max u = 1 (positive
cosmological constant) or min u = 1 (negative), and record horizon data.
The constant is itself normalised to sign * n(n-1)/2 throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .geometry import (
    BoundaryComponent,
    Extremum,
    RadialProfile,
    StaticTriple,
)


def admissible_mass_bound(n: int) -> float:
    """Largest mass for which the f(r) = 1 - r^2 - 2m r^(2-n) profile has two
    positive roots (the extremal limit where the horizons merge)."""
    return math.sqrt((n - 2) ** (n - 2) / float(n) ** n)


@dataclass(frozen=True)
class SdSParams:
    n: int
    m: float

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError("dimension must be >= 3")
        bound = admissible_mass_bound(self.n)
        if not 0.0 < self.m < bound:
            raise ValueError(
                f"mass m={self.m} outside the admissible interval (0, {bound})")


def bracketed_root(fn: Callable[[float], float], lo: float, hi: float,
                   dfn: Callable[[float], float] | None = None,
                   bisect_iters: int = 80, newton_iters: int = 4) -> float:
    """Root of fn on [lo, hi], bisection first, then a safeguarded Newton
    polish that never leaves the bracket."""
    flo, fhi = fn(lo), fn(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    a, b, fa = lo, hi, flo
    for _ in range(bisect_iters):
        mid = 0.5 * (a + b)
        fm = fn(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (fa > 0):
            a, fa = mid, fm
        else:
            b = mid
        if b - a <= 1e-16 * (abs(a) + abs(b)):
            break
    x = 0.5 * (a + b)
    if dfn is not None:
        for _ in range(newton_iters):
            d = dfn(x)
            if d == 0.0:
                break
            step = fn(x) / d
            candidate = x - step
            if a < candidate < b:
                x = candidate
    return x


def _tiny_guard(x: float) -> float:
    return x if abs(x) > 1e-300 else math.copysign(1e-300, x or 1.0)


def de_sitter(n: int) -> StaticTriple:
    """Round-hemisphere solution: f(r) = 1 - r^2, u = sqrt(1 - r^2) on [0, 1],
    single horizon at r = 1 with unit surface gravity."""
    if n < 3:
        raise ValueError("dimension must be >= 3")

    def f_fn(r: float) -> tuple[float, float, float]:
        return 1.0 - r * r, -2.0 * r, -2.0

    def u_fn(r: float) -> tuple[float, float, float]:
        val = math.sqrt(max(1.0 - r * r, 0.0))
        g = _tiny_guard(val)
        return val, -r / g, -1.0 / g - r * r / g ** 3

    boundary = BoundaryComponent(location=1.0, sphere_radius=1.0,
                                 surface_gravity=1.0,
                                 euler_characteristic=2 if n == 3 else 0)
    return StaticTriple(
        n=n, lambda_sign=+1, chart="areal",
        u=RadialProfile((0.0, 1.0), u_fn),
        h=RadialProfile((0.0, 1.0), lambda r: (r, 1.0, 0.0)),
        f=RadialProfile((0.0, 1.0), f_fn),
        boundaries=(boundary,),
        extremum=Extremum(location=0.0, discrete=True, count=1),
        name="de_sitter",
    )


def anti_de_sitter(n: int, r_max: float = 500.0) -> StaticTriple:
    """Hyperbolic solution: f(r) = 1 + r^2, u = sqrt(1 + r^2), empty boundary,
    conformally compact with defining function 1/sqrt(u^2 - 1) = 1/r.

    The manifold is unbounded; r_max only truncates the numerical domain and
    is chosen so every sampled field-equation term stays well inside double
    precision (the tensor terms grow like u)."""
    if n < 3:
        raise ValueError("dimension must be >= 3")

    def f_fn(r: float) -> tuple[float, float, float]:
        return 1.0 + r * r, 2.0 * r, 2.0

    def u_fn(r: float) -> tuple[float, float, float]:
        val = math.sqrt(1.0 + r * r)
        return val, r / val, 1.0 / val ** 3

    return StaticTriple(
        n=n, lambda_sign=-1, chart="areal",
        u=RadialProfile((0.0, r_max), u_fn),
        h=RadialProfile((0.0, r_max), lambda r: (r, 1.0, 0.0)),
        f=RadialProfile((0.0, r_max), f_fn),
        boundaries=(),
        extremum=Extremum(location=0.0, discrete=True, count=1),
        conformally_compact=True,
        name="anti_de_sitter",
    )


def schwarzschild_de_sitter(params: SdSParams) -> StaticTriple:
    """Two-horizon family: f(r) = 1 - r^2 - 2m r^(2-n) on [r1, r2], potential
    u = sqrt(f / f(r0)) with r0 = (m(n-2))^(1/n) the interior maximiser.

    The extremal set is the whole sphere r = r0, so it is flagged
    non-discrete; the inner surface gravity exceeds 1 for every mass.
    """
    n, m = params.n, params.m

    def f_val(r: float) -> float:
        return 1.0 - r * r - 2.0 * m * r ** (2 - n)

    def f_d1(r: float) -> float:
        return -2.0 * r + 2.0 * m * (n - 2) * r ** (1 - n)

    def f_d2(r: float) -> float:
        return -2.0 - 2.0 * m * (n - 2) * (n - 1) * r ** (-n)

    r0 = (m * (n - 2)) ** (1.0 / n)
    r1 = bracketed_root(f_val, 1e-12, r0, dfn=f_d1)
    r2 = bracketed_root(f_val, r0, 1.0, dfn=f_d1)
    f0 = f_val(r0)
    inv_sqrt_f0 = 1.0 / math.sqrt(f0)

    def f_fn(r: float) -> tuple[float, float, float]:
        return f_val(r), f_d1(r), f_d2(r)

    def u_fn(r: float) -> tuple[float, float, float]:
        fv = max(f_val(r), 0.0)
        val = math.sqrt(fv) * inv_sqrt_f0
        g = _tiny_guard(math.sqrt(fv))
        d1 = inv_sqrt_f0 * f_d1(r) / (2.0 * g)
        d2 = inv_sqrt_f0 * (2.0 * fv * f_d2(r) - f_d1(r) ** 2) / (4.0 * g ** 3)
        return val, d1, d2

    chi = 2 if n == 3 else (2 if (n - 1) % 2 == 0 else 0)
    kappas = tuple(abs(f_d1(r)) / (2.0 * math.sqrt(f0)) for r in (r1, r2))
    boundaries = tuple(
        BoundaryComponent(location=r, sphere_radius=r, surface_gravity=k,
                          euler_characteristic=chi)
        for r, k in zip((r1, r2), kappas))
    return StaticTriple(
        n=n, lambda_sign=+1, chart="areal",
        u=RadialProfile((r1, r2), u_fn),
        h=RadialProfile((r1, r2), lambda r: (r, 1.0, 0.0)),
        f=RadialProfile((r1, r2), f_fn),
        boundaries=boundaries,
        extremum=Extremum(location=r0, discrete=False, sphere_radius=r0),
        normalization_factor=inv_sqrt_f0,
        name=f"schwarzschild_de_sitter(n={n}, m={m})",
    )


def nariai(n: int) -> StaticTriple:
    """Product solution: constant warping radius sqrt((n-2)/n) and potential
    u = sin(sqrt(n) rho) on [0, pi/sqrt(n)], surface gravity sqrt(n) at both
    horizons; the extremal set is a whole sphere."""
    if n < 3:
        raise ValueError("dimension must be >= 3")
    h0 = math.sqrt((n - 2) / n)
    sn = math.sqrt(n)
    length = math.pi / sn

    def u_fn(rho: float) -> tuple[float, float, float]:
        return (math.sin(sn * rho), sn * math.cos(sn * rho),
                -n * math.sin(sn * rho))

    chi = 2 if (n - 1) % 2 == 0 else 0
    boundaries = tuple(
        BoundaryComponent(location=loc, sphere_radius=h0, surface_gravity=sn,
                          euler_characteristic=chi)
        for loc in (0.0, length))
    return StaticTriple(
        n=n, lambda_sign=+1, chart="arclength",
        u=RadialProfile((0.0, length), u_fn),
        h=RadialProfile((0.0, length), lambda rho: (h0, 0.0, 0.0)),
        f=None,
        boundaries=boundaries,
        extremum=Extremum(location=0.5 * length, discrete=False,
                          sphere_radius=h0),
        name=f"nariai(n={n})",
    )


def by_name(name: str, n: int = 3, m: float = 0.1) -> StaticTriple:
    """Constructor lookup used by the command-line front end."""
    key = name.lower().replace("-", "").replace("_", "")
    if key in ("desitter", "ds"):
        return de_sitter(n)
    if key in ("antidesitter", "ads"):
        return anti_de_sitter(n)
    if key == "sds":
        return schwarzschild_de_sitter(SdSParams(n=n, m=m))
    if key == "nariai":
        return nariai(n)
    raise ValueError(f"unknown model {name!r}")
