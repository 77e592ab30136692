"""Radial multipliers and the kinetic lower bound.

The working multiplier is phi(r) = r + phi_ls(r): the linear part gives the
angular space-time bound, the local-smoothing part phi_ls grows like r^2/R
inside the ball of radius R and like r/2 outside.  Its bilaplacian is
distributional: a regular -(d-1)(d-3)-type tail, a negative surface layer on
{r = R}, and (in d = 3) a point mass at the origin inherited from the linear
part.  On the grid the surface layer becomes a one-cell shell average and the
point mass is evaluated by quadratic interpolation of |psi|^2 to r = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import (
    GridSpec,
    SpinorField,
    radial_tangential_split,
    radius,
    shell_sums,
    sphere_integral,
)


@dataclass
class MultiplierProfile:
    """Radial multiplier described by closed-form derivative data.

    bilap_regular(r) is the locally integrable part of the bilaplacian;
    surface_weight multiplies the surface measure on {r = R} and
    origin_mass multiplies a delta at the origin.
    """

    name: str
    d: int
    phi_prime: object
    phi_second: object
    bilap_regular: object
    R: float | None = None
    surface_weight: float = 0.0
    origin_mass: float = 0.0


def local_smoothing_profile(d: int, R: float) -> MultiplierProfile:
    """The profile r + phi_ls(r) for a chosen transition radius R."""
    if d < 1 or R <= 0:
        raise ValueError("need d >= 1 and R > 0")
    c = (d - 1) / (2.0 * d)

    def phi_prime(r):
        r = np.asarray(r, dtype=float)
        _check_positive(r)
        inside = 1.0 + c * r / R
        outside = 1.5 - (R ** (d - 1)) / (2.0 * d * r ** (d - 1))
        return np.where(r <= R, inside, outside)

    def phi_second(r):
        r = np.asarray(r, dtype=float)
        _check_positive(r)
        inside = np.full_like(r, c / R)
        outside = c * (R ** (d - 1)) / r**d
        return np.where(r <= R, inside, outside)

    def bilap_regular(r):
        r = np.asarray(r, dtype=float)
        _check_positive(r)
        # linear-part tail (d >= 4) plus half of it again beyond R from phi_ls
        out = np.zeros_like(r)
        if d >= 4:
            out = out - (d - 1.0) * (d - 3.0) / r**3
            out = out - np.where(r >= R, (d - 1.0) * (d - 3.0) / (2.0 * r**3), 0.0)
        return out

    return MultiplierProfile(
        name=f"local-smoothing(R={R})",
        d=d,
        phi_prime=phi_prime,
        phi_second=phi_second,
        bilap_regular=bilap_regular,
        R=R,
        surface_weight=-(d - 1.0) / (2.0 * R**2),
        origin_mass=(-8.0 * np.pi) if d == 3 else 0.0,
    )


def morawetz_profile(d: int) -> MultiplierProfile:
    """phi(r) = r alone."""

    def phi_prime(r):
        r = np.asarray(r, dtype=float)
        _check_positive(r)
        return np.ones_like(r)

    def phi_second(r):
        r = np.asarray(r, dtype=float)
        _check_positive(r)
        return np.zeros_like(r)

    def bilap_regular(r):
        r = np.asarray(r, dtype=float)
        if d >= 4:
            return -(d - 1.0) * (d - 3.0) / r**3
        return np.zeros_like(r)

    return MultiplierProfile(
        name="morawetz", d=d, phi_prime=phi_prime, phi_second=phi_second,
        bilap_regular=bilap_regular,
        origin_mass=(-8.0 * np.pi) if d == 3 else 0.0,
    )


def quadratic_profile(d: int) -> MultiplierProfile:
    """phi(r) = r^2; its generator reduces to the plain dilation generator."""
    return MultiplierProfile(
        name="quadratic", d=d,
        phi_prime=lambda r: 2.0 * np.asarray(r, dtype=float),
        phi_second=lambda r: np.full_like(np.asarray(r, dtype=float), 2.0),
        bilap_regular=lambda r: np.zeros_like(np.asarray(r, dtype=float)),
    )


def constant_profile(d: int) -> MultiplierProfile:
    """phi constant; every derived operator vanishes."""
    zero = lambda r: np.zeros_like(np.asarray(r, dtype=float))  # noqa: E731
    return MultiplierProfile(
        name="constant", d=d, phi_prime=zero, phi_second=zero, bilap_regular=zero
    )


def gaussian_bump_profile(d: int, s: float = 2.0) -> MultiplierProfile:
    """phi(r) = -s^2 exp(-r^2/(2 s^2)); smooth with closed-form bilaplacian.

    Used for clean time-step convergence studies where the kinked profile's
    shell regularization would dominate the error.
    """

    def phi_prime(r):
        r = np.asarray(r, dtype=float)
        return r * np.exp(-(r**2) / (2.0 * s**2))

    def phi_second(r):
        r = np.asarray(r, dtype=float)
        return (1.0 - r**2 / s**2) * np.exp(-(r**2) / (2.0 * s**2))

    def bilap_regular(r):
        r = np.asarray(r, dtype=float)
        u = r**2 / s**2
        return (np.exp(-u / 2.0) / s**2) * (-d * (d + 2.0) + (2.0 * d + 4.0) * u - u**2)

    return MultiplierProfile(
        name=f"gaussian-bump(s={s})", d=d,
        phi_prime=phi_prime, phi_second=phi_second, bilap_regular=bilap_regular,
    )


def _check_positive(r):
    if np.any(np.asarray(r) <= 0):
        raise ValueError("multiplier derivatives are defined for r > 0 only")


def phi_prime(profile: MultiplierProfile, r):
    return profile.phi_prime(r)


def phi_second(profile: MultiplierProfile, r):
    return profile.phi_second(r)


def hessian_form(profile: MultiplierProfile, f: SpinorField,
                 split=None) -> np.ndarray:
    """Pointwise phi''|d_r f|^2 + (phi'/r)|d_tau f|^2, nonnegative for the
    working profiles (phi'' > 0, phi' > 0)."""
    if split is None:
        split = radial_tangential_split(f)
    rad_sq, tan_sq = split
    r = radius(f.grid)
    return profile.phi_second(r) * rad_sq + (profile.phi_prime(r) / r) * tan_sq


def origin_density(grid: GridSpec, dens: np.ndarray, reach: float = 3.0) -> float:
    """|psi(0)|^2 by fitting a + b r^2 over nodes with r < reach * dx."""
    r = radius(grid)
    mask = r < reach * grid.dx
    if mask.sum() < 3:
        mask = r < (reach + 2.0) * grid.dx
    rr = r[mask] ** 2
    dd = dens[mask]
    A = np.stack([np.ones_like(rr), rr], axis=1)
    coef, *_ = np.linalg.lstsq(A, dd, rcond=None)
    return float(max(coef[0], 0.0))


def bilaplacian_quadratic(profile: MultiplierProfile, f: SpinorField,
                          dens=None, dens_shells=None) -> float:
    """int Delta^2 phi |f|^2 with the distributional pieces included."""
    grid = f.grid
    if dens is None:
        dens = f.density()
    r = radius(grid)
    total = float(np.sum(profile.bilap_regular(r) * dens) * grid.cell_volume)
    if profile.surface_weight != 0.0:
        if dens_shells is None:
            dens_shells = shell_sums(grid, dens)
        total += profile.surface_weight * sphere_integral(grid, dens_shells, profile.R)
    if profile.origin_mass != 0.0:
        total += profile.origin_mass * origin_density(grid, dens)
    return total


def kinetic_term(profile: MultiplierProfile, f: SpinorField, split=None,
                 dens=None, dens_shells=None) -> float:
    """K = (1/2) int grad f . D^2 phi . grad f - (1/8) int Delta^2 phi |f|^2."""
    grid = f.grid
    hess = hessian_form(profile, f, split=split)
    return float(
        0.5 * np.sum(hess) * grid.cell_volume
        - 0.125 * bilaplacian_quadratic(profile, f, dens=dens, dens_shells=dens_shells)
    )


@dataclass
class KineticBound:
    """Kinetic term, the four lower-bound terms, and the margin K - sum."""

    K: float
    rhs_terms: tuple
    margin: float


def kinetic_lower_bound_check(profile: MultiplierProfile, f: SpinorField,
                              split=None) -> KineticBound:
    """Evaluate the kinetic lower bound for the local-smoothing profile.

    rhs terms: tangential weight, gradient mass in the ball of radius R,
    the |psi|^2/r^3 tail (zero in d = 3), and the surface term on {r = R}.
    """
    grid = f.grid
    d = profile.d
    if d < 3:
        raise ValueError("kinetic lower bound needs d >= 3")
    if profile.R is None:
        raise ValueError("profile has no transition radius")
    R = profile.R
    if split is None:
        split = radial_tangential_split(f)
    rad_sq, tan_sq = split
    r = radius(grid)
    dens = f.density()
    dens_shells = shell_sums(grid, dens)
    grad_shells = shell_sums(grid, rad_sq + tan_sq)

    K = kinetic_term(profile, f, split=split, dens=dens, dens_shells=dens_shells)

    t_tan = 0.5 * float(np.sum(tan_sq / r) * grid.cell_volume)
    kball = int(np.floor(R / grid.dx))
    t_ball = (d - 1.0) / (4.0 * d * R) * float(grad_shells[: kball + 1].sum())
    t_tail = (d - 1.0) * (d - 3.0) / 8.0 * float(np.sum(dens / r**3) * grid.cell_volume)
    t_surf = (d - 1.0) / (16.0 * R**2) * sphere_integral(grid, dens_shells, R)
    rhs = (t_tan, t_ball, t_tail, t_surf)
    return KineticBound(K=K, rhs_terms=rhs, margin=K - sum(rhs))
