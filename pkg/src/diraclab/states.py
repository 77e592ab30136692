"""Field builders: envelopes, band-limited random states, plane-wave spinors.

Identity tests multiply by x, so all generic states carry a Gaussian envelope
keeping them effectively supported in the inner half of the box; plane-wave
spinors are the exact discrete eigenstates of the free Dirac operator and are
used without an envelope.
"""

from __future__ import annotations

import numpy as np

from .clifford import CliffordRep
from .grid import GridSpec, SpinorField, ifftn, l2_norm, radius


def gaussian_envelope(grid: GridSpec, sigma: float | None = None) -> np.ndarray:
    """exp(-r^2 / (2 sigma^2)); default sigma is an eighth of the box side."""
    if sigma is None:
        sigma = grid.half_length / 4.0
    r = radius(grid)
    return np.exp(-(r**2) / (2.0 * sigma**2))


def gaussian_field(grid: GridSpec, ncomp: int = 1, sigma: float = 1.0,
                   weights=None) -> SpinorField:
    env = np.exp(-(radius(grid) ** 2) / (2.0 * sigma**2))
    if weights is None:
        weights = np.ones(ncomp)
    values = np.array([w * env for w in weights], dtype=np.complex128)
    return SpinorField(grid, values)


def random_envelope_field(grid: GridSpec, ncomp: int, rng: np.random.Generator,
                          kfrac: float = 0.35, sigma: float | None = None,
                          normalize: bool = True) -> SpinorField:
    """Smooth random spinor: band-limited Fourier noise times a Gaussian envelope.

    kfrac caps the populated modes at that fraction of the Nyquist frequency,
    so the state stays resolvable after multiplication by weights and x.
    """
    kmax = max(1, int(kfrac * grid.n / 2))
    hat = np.zeros((ncomp,) + grid.shape, dtype=np.complex128)
    # populate the low-frequency corner blocks (positive and negative freqs)
    box = (2 * kmax + 1,) * grid.d
    coeffs = rng.standard_normal((ncomp,) + box) + 1j * rng.standard_normal((ncomp,) + box)
    idx = [np.r_[0 : kmax + 1, grid.n - kmax : grid.n] for _ in range(grid.d)]
    mesh = np.ix_(np.arange(ncomp), *idx)
    hat[mesh] = coeffs
    values = ifftn(hat) * gaussian_envelope(grid, sigma)
    field = SpinorField(grid, values)
    if normalize:
        nrm = l2_norm(field)
        if nrm > 0:
            field = field * (1.0 / nrm)
    return field


def fixed_mode_field(grid: GridSpec, ncomp: int, kmax: int,
                     rng: np.random.Generator, sigma: float) -> SpinorField:
    """The same continuum state on any grid: random coefficients on the fixed
    integer mode box |k_j| <= kmax times a Gaussian envelope.  Refinement
    studies need the state to be grid-independent."""
    if kmax >= grid.n // 2:
        raise ValueError("mode box exceeds the grid Nyquist range")
    hat = np.zeros((ncomp,) + grid.shape, dtype=np.complex128)
    box = (2 * kmax + 1,) * grid.d
    coeffs = rng.standard_normal((ncomp,) + box) + 1j * rng.standard_normal((ncomp,) + box)
    # coefficient slot order (0..kmax, -kmax..-1) matches these index lists on
    # every grid size, so the continuum function is grid-independent
    idx = [np.r_[0 : kmax + 1, grid.n - kmax : grid.n] for _ in range(grid.d)]
    hat[np.ix_(np.arange(ncomp), *idx)] = coeffs
    values = ifftn(hat) * grid.n**grid.d  # undo the size-dependent scaling
    values = values * np.exp(-(radius(grid) ** 2) / (2.0 * sigma**2))
    field = SpinorField(grid, values)
    nrm = l2_norm(field)
    return field * (1.0 / nrm)


def dirac_mode_matrix(rep: CliffordRep, p: np.ndarray, m: float) -> np.ndarray:
    """The N x N symbol alpha.p + m beta at a single momentum."""
    return rep.alpha_dot(p) + m * rep.beta


def plane_wave_spinor(grid: GridSpec, rep: CliffordRep, kvec, m: float,
                      branch: int = +1, which: int = 0) -> tuple:
    """Exact discrete eigenstate of the free Dirac operator.

    kvec is a tuple of integer mode numbers; the physical momentum is
    pi/ell times kvec.  branch +1/-1 selects the positive/negative energy
    eigenspace, `which` picks a vector inside the (degenerate) eigenspace.
    Returns (field, eigenvalue).
    """
    kvec = np.asarray(kvec, dtype=float)
    if kvec.shape != (grid.d,):
        raise ValueError(f"kvec must have {grid.d} entries")
    p = np.pi / grid.half_length * kvec
    symbol = dirac_mode_matrix(rep, p, m)
    evals, evecs = np.linalg.eigh(symbol)
    order = np.argsort(evals)
    if branch > 0:
        cols = order[::-1]
    else:
        cols = order
    lam = float(evals[cols[which]])
    u = evecs[:, cols[which]]
    phase = np.zeros(grid.shape, dtype=np.complex128)
    phase[:] = 1.0
    for j in range(grid.d):
        phase = phase * np.exp(1j * p[j] * grid.coord(j))
    values = u[(...,) + (None,) * grid.d] * phase
    return SpinorField(grid, values), lam


def radial_profile_field(grid: GridSpec, profile, ncomp: int = 1,
                         envelope_sigma: float | None = None) -> SpinorField:
    """Scalar radial profile times an envelope, copied across components."""
    r = radius(grid)
    vals = profile(r) * gaussian_envelope(grid, envelope_sigma)
    values = np.broadcast_to(vals, (ncomp,) + grid.shape).astype(np.complex128)
    return SpinorField(grid, values.copy())
