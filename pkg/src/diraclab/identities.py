"""Desk-scale verification suite for the operator identities.

Each check returns a named residual with its tolerance.  Exact-algebra checks
(anticommutator-square identity, supersymmetry, composed commutator
rearrangements) carry roundoff tolerances; checks that compare a discrete
composition against a closed-form continuum expression carry the grid
tolerance and shrink under refinement.
"""

from __future__ import annotations

import numpy as np

from .clifford import CliffordRep, build_dirac_matrices, matrix_identity_check, verify_clifford
from .grid import (
    GridSpec,
    SpinorField,
    gradient,
    gradient_norm_sq,
    inner,
    l2_norm,
    radius,
)
from . import operators as ops
from .multipliers import morawetz_profile
from .potentials import PotentialSpec, electrostatic, gaussian_well
from .states import gaussian_envelope, random_envelope_field


def _entry(name: str, residual: float, tol: float) -> dict:
    return {
        "name": name,
        "residual": float(residual),
        "tolerance": float(tol),
        "pass": bool(residual <= tol),
    }


def annular_field(grid: GridSpec, ncomp: int, rng, r0: float = None,
                  width: float = None) -> SpinorField:
    """Band-limited random field supported on an annulus away from both the
    origin and the wrap; used with singular potentials."""
    if r0 is None:
        r0 = grid.half_length / 2.0
    if width is None:
        width = grid.half_length / 12.0
    f = random_envelope_field(grid, ncomp, rng, kfrac=0.2, sigma=grid.half_length)
    r = radius(grid)
    ring = np.exp(-((r - r0) ** 2) / (2.0 * width**2))
    vals = f.values * ring
    out = SpinorField(grid, vals)
    nrm = l2_norm(out)
    return out * (1.0 / nrm)


def run_identity_suite(d: int = 3, n: int = 64, half_length: float = 12.0,
                       m: float = 1.0, seed: int = 0, pairs: int = 1000,
                       grid_tol: float = 1e-6,
                       corrupt_beta: bool = False) -> list:
    """All identity checks at one grid size; returns a list of entries."""
    rng = np.random.default_rng(seed)
    rep = build_dirac_matrices(d)
    if corrupt_beta:
        rep = CliffordRep(d=rep.d, N=rep.N, alphas=rep.alphas, beta=rep.alphas[0])
    entries = []

    entries.append(_entry("clifford-relations", verify_clifford(rep), 1e-12))

    worst = 0.0
    for size in (2, 4, 8):
        for _ in range(pairs // 3):
            T = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
            A = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
            scale = (np.linalg.norm(T, 2) ** 2) * np.linalg.norm(A, 2)
            worst = max(worst, matrix_identity_check(T, A) / scale)
    entries.append(_entry("anticommutator-square-identity", worst, 1e-12))

    grid = GridSpec(d=d, n=n, half_length=half_length)
    # envelope narrow enough that multiplication by x never feels the wrap
    f = random_envelope_field(grid, rep.N, rng, kfrac=0.25, sigma=half_length / 8.0)

    hd2 = ops.apply_HD(ops.apply_HD(f, m, rep), m, rep)
    target = ops.apply_H0(f) + (m**2) * f
    entries.append(
        _entry("supersymmetry", l2_norm(hd2 - target) / l2_norm(target), 1e-12)
    )

    hd_norm_sq = l2_norm(ops.apply_HD(f, m, rep)) ** 2
    free_id = abs(hd_norm_sq - (gradient_norm_sq(f) + m**2 * l2_norm(f) ** 2))
    entries.append(_entry("first-order-energy-identity", free_id / hd_norm_sq, 1e-10))

    # commutator-anticommutator identity against the closed form, with a
    # smooth localized multiplication operator
    r = radius(grid)
    sig = half_length / 5.0
    chi = np.exp(-(r**2) / (2.0 * sig**2))
    chi_mult = lambda u: SpinorField(grid, chi * u.values)  # noqa: E731
    hd = lambda u: ops.apply_HD(u, m, rep)  # noqa: E731
    anti = lambda u: hd(chi_mult(u)) + chi_mult(hd(u))  # noqa: E731
    lhs = ops.commutator_direct(f, hd, anti)
    lap_chi = (r**2 / sig**4 - d / sig**2) * chi
    grad_chi = [-(grid.coord(j) / sig**2) * chi for j in range(d)]
    hat_grads = [g.values for g in gradient(f)]
    rhs_vals = -lap_chi * f.values
    for j in range(d):
        rhs_vals = rhs_vals - 2.0 * grad_chi[j] * hat_grads[j]
    rhs = SpinorField(grid, rhs_vals)
    entries.append(
        _entry("squared-commutator-closed-form", l2_norm(lhs - rhs) / l2_norm(rhs), grid_tol)
    )

    comm_h0_ig = ops.commutator_direct(f, ops.apply_H0, ops.apply_iG)
    lhs_pc = inner(f, comm_h0_ig).real
    rhs_pc = 2.0 * inner(f, ops.apply_H0(f)).real
    entries.append(
        _entry("positive-commutator", abs(lhs_pc - rhs_pc) / abs(rhs_pc), grid_tol)
    )

    # composed rearrangements: virial commutator and its multiplier variant
    pot = gaussian_well(rep, depth=1.0, width=half_length / 8.0)
    vmul = lambda u: ops.apply_potential(u, pot)  # noqa: E731
    h_full = lambda u: hd(u) + vmul(u)  # noqa: E731
    l_op = lambda u: ops.apply_L(u, m, rep)  # noqa: E731
    # the 2 H_0 on the right is the continuum closed form, so this carries the
    # grid tolerance, unlike the purely compositional rearrangement below
    lhs_sp = ops.commutator_direct(f, h_full, l_op)
    rhs_sp = 2.0 * ops.apply_H0(f) + ops.commutator_direct(f, vmul, l_op)
    scale = l2_norm(lhs_sp)
    entries.append(
        _entry("virial-commutator-rearrangement", l2_norm(lhs_sp - rhs_sp) / scale, grid_tol)
    )

    prof = morawetz_profile(d)
    lphi = lambda u: ops.apply_Lphi(u, m, rep, prof, skew=True)  # noqa: E731
    igphi = lambda u: ops.apply_iGphi_skew(u, prof)  # noqa: E731
    lhs_mw = ops.commutator_direct(f, h_full, lphi)
    h0c = lambda u: ops.apply_H0(u)  # noqa: E731
    inner_comm = lambda u: ops.commutator_direct(u, h0c, igphi)  # noqa: E731
    rhs_mw = inner_comm(f) + ops.commutator_direct(f, vmul, lphi)
    entries.append(
        _entry(
            "multiplier-commutator-rearrangement",
            l2_norm(lhs_mw - rhs_mw) / l2_norm(lhs_mw),
            1e-10,
        )
    )

    # expanded first-order commutator vs direct composition; the singular
    # entry runs on an annular state, away from the origin cusp (d >= 3 only:
    # the inverse-distance entry is too rough for a 1d/2d desk grid)
    if d >= 3:
        ann = annular_field(grid, rep.N, rng)
        pot_exp = electrostatic(rep, nu=0.4)
        state_exp = ann
    else:
        pot_exp = pot
        state_exp = f
    direct = ops.commutator_direct(
        state_exp, hd, lambda u: ops.apply_potential(u, pot_exp)
    )
    expanded = ops.commutator_HD_V(state_exp, pot_exp, m, rep)
    entries.append(
        _entry(
            "first-order-commutator-expansion",
            l2_norm(direct - expanded) / l2_norm(direct),
            grid_tol,
        )
    )

    comm_igv = ops.commutator_direct(f, ops.apply_iG, vmul)
    xgv = pot.xgrad_V_on_grid(grid)
    entries.append(
        _entry(
            "dilation-potential-commutator",
            l2_norm(comm_igv - SpinorField(grid, xgv * f.values)) / l2_norm(comm_igv),
            grid_tol,
        )
    )

    comm_igphiv = ops.commutator_direct(
        f, lambda u: ops.apply_iGphi(u, prof), vmul
    )
    dv = pot.scalar_grad_profile(r)
    tgt = SpinorField(grid, 0.5 * prof.phi_prime(r) * dv * f.values)
    entries.append(
        _entry(
            "multiplier-potential-commutator",
            l2_norm(comm_igphiv - tgt) / l2_norm(comm_igphiv),
            grid_tol,
        )
    )

    from .potentials import potential_pairing_split

    direct_v, split_v = potential_pairing_split(f, m, rep, pot)
    entries.append(
        _entry(
            "potential-pairing-rewrite",
            abs(direct_v - split_v) / max(abs(direct_v), 1e-300),
            1e-8,
        )
    )
    direct_m, split_m = potential_pairing_split(f, m, rep, pot, profile=prof)
    entries.append(
        _entry(
            "potential-pairing-rewrite-multiplier",
            abs(direct_m - split_m) / max(abs(direct_m), 1e-300),
            1e-8,
        )
    )

    return entries
