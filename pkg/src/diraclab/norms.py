"""Hardy inequality, Morrey-Campanato and spherical norms, weighted bounds.

The two weighted comparison bounds rest on the dyadic constant

    c_delta^2 = sum_{j in Z} 2 / (2^{-delta j} + 2^{delta j})^2,

computed as a truncated sum with a rigorous geometric tail bound, so every
certificate can use a safe upper bound for the limit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import GridSpec, SpinorField, gradient_norm_sq, radius, shell_sums


@dataclass
class CDeltaSum:
    """Truncated dyadic series with a tail bound bracketing the limit."""

    delta: float
    terms: int
    partial_sq: float  # increasing in the truncation order
    tail_sq: float     # the limit lies in [partial_sq, partial_sq + tail_sq]

    @property
    def upper_sq(self) -> float:
        return self.partial_sq + self.tail_sq

    @property
    def value(self) -> float:
        """Safe upper bound for c_delta itself."""
        return float(np.sqrt(self.upper_sq))


def c_delta(delta: float, terms: int = 200) -> CDeltaSum:
    """Partial sum over |j| <= terms plus the geometric tail bound
    4 * 2^(-2 delta J) / (2^(2 delta) - 1)."""
    if not 0.0 < delta < 0.5:
        raise ValueError(f"delta must lie in (0, 1/2), got {delta}")
    if terms < 1:
        raise ValueError("need at least one term")
    j = np.arange(-terms, terms + 1, dtype=float)
    partial = float(np.sum(2.0 / (2.0 ** (-delta * j) + 2.0 ** (delta * j)) ** 2))
    tail = 4.0 * 2.0 ** (-2.0 * delta * terms) / (2.0 ** (2.0 * delta) - 1.0)
    return CDeltaSum(delta=delta, terms=terms, partial_sq=partial, tail_sq=tail)


def _sup_over_radii(grid: GridSpec, shells: np.ndarray, power: int) -> tuple:
    """sup over R in [dx, ell] of R^(-power) * cumulative(R), exact over the
    one-cell shell edges (the ratio decreases between consecutive edges, so
    the discrete supremum is attained at an edge)."""
    kmax = min(len(shells), int(np.floor(grid.half_length / grid.dx)))
    edges = (np.arange(kmax) + 1.0) * grid.dx
    cum = np.cumsum(shells[:kmax])
    vals = cum / edges**power
    k = int(np.argmax(vals))
    return float(vals[k]), float(edges[k])


def morrey_norm(u: SpinorField) -> tuple:
    """(sup_R R^-1 int_{|x|<=R} |u|^2, argmax R)."""
    shells = shell_sums(u.grid, u.density())
    return _sup_over_radii(u.grid, shells, power=1)


def spherical_norm(u: SpinorField) -> tuple:
    """(sup_R R^-2 int_{|x|=R} |u|^2, argmax R), surfaces by one-cell shells."""
    shells = shell_sums(u.grid, u.density()) / u.grid.dx
    kmax = min(len(shells), int(np.floor(u.grid.half_length / u.grid.dx)))
    centers = (np.arange(kmax) + 0.5) * u.grid.dx
    vals = shells[:kmax] / centers**2
    k = int(np.argmax(vals))
    return float(vals[k]), float(centers[k])


@dataclass
class WeightedBoundsReport:
    lhs_morrey: float
    rhs_morrey: float
    lhs_spherical: float
    rhs_spherical: float


def verify_weighted_bounds(u: SpinorField, delta: float,
                           check: bool = True) -> WeightedBoundsReport:
    """Both weighted-integral bounds in squared form.

    lhs1 = int |u|^2 (r^(1/2-d) + r^(1/2+d))^-2  <=  c_delta^2 * morrey
    lhs2 = int |u|^2 (r^(3/2-d) + r^(3/2+d))^-2  <=  (c_delta^2 / 2) * spherical
    """
    if not 0.0 < delta < 0.5:
        raise ValueError(f"delta must lie in (0, 1/2), got {delta}")
    grid = u.grid
    r = radius(grid)
    dens = u.density()
    w1 = (r ** (0.5 - delta) + r ** (0.5 + delta)) ** -2
    w2 = (r ** (1.5 - delta) + r ** (1.5 + delta)) ** -2
    lhs1 = float(np.sum(dens * w1) * grid.cell_volume)
    lhs2 = float(np.sum(dens * w2) * grid.cell_volume)
    c2 = c_delta(delta).upper_sq
    rhs1 = c2 * morrey_norm(u)[0]
    rhs2 = 0.5 * c2 * spherical_norm(u)[0]
    report = WeightedBoundsReport(lhs1, rhs1, lhs2, rhs2)
    if check:
        slack = 1.0 + 1e-6
        if lhs1 > rhs1 * slack or lhs2 > rhs2 * slack:
            raise ValueError(f"weighted bound violated: {report}")
    return report


def verify_hardy(u: SpinorField, check: bool = True) -> tuple:
    """(int |u|^2/|x|^2, 4/(d-2)^2 int |grad u|^2) for d >= 3."""
    grid = u.grid
    if grid.d < 3:
        raise ValueError("Hardy inequality with this constant needs d >= 3")
    r = radius(grid)
    lhs = float(np.sum(u.density() / r**2) * grid.cell_volume)
    rhs = 4.0 / (grid.d - 2.0) ** 2 * gradient_norm_sq(u)
    if check and lhs > rhs * (1.0 + 1e-6):
        raise ValueError(f"Hardy inequality violated: lhs={lhs}, rhs={rhs}")
    return lhs, rhs


@dataclass
class NormReport:
    """All norm-suite quantities for one field."""

    morrey: float
    morrey_argmax: float
    spherical: float
    spherical_argmax: float
    hardy_lhs: float
    hardy_rhs: float
    weighted: WeightedBoundsReport
    delta: float

    def to_dict(self) -> dict:
        return {
            "morrey": self.morrey,
            "morrey_argmax": self.morrey_argmax,
            "spherical": self.spherical,
            "spherical_argmax": self.spherical_argmax,
            "hardy_lhs": self.hardy_lhs,
            "hardy_rhs": self.hardy_rhs,
            "weighted_lhs_morrey": self.weighted.lhs_morrey,
            "weighted_rhs_morrey": self.weighted.rhs_morrey,
            "weighted_lhs_spherical": self.weighted.lhs_spherical,
            "weighted_rhs_spherical": self.weighted.rhs_spherical,
            "delta": self.delta,
        }


def norm_report(u: SpinorField, delta: float = 0.25) -> NormReport:
    mor, mor_r = morrey_norm(u)
    sph, sph_r = spherical_norm(u)
    if u.grid.d >= 3:
        hardy_lhs, hardy_rhs = verify_hardy(u, check=False)
    else:
        hardy_lhs, hardy_rhs = float("nan"), float("nan")
    weighted = verify_weighted_bounds(u, delta, check=False)
    return NormReport(
        morrey=mor, morrey_argmax=mor_r,
        spherical=sph, spherical_argmax=sph_r,
        hardy_lhs=hardy_lhs, hardy_rhs=hardy_rhs,
        weighted=weighted, delta=delta,
    )
