"""Hermitian matrix-valued potentials, hypothesis constants, certificates.

Every catalog entry carries closed-form derivative and commutator data; grid
differentiation is never used for potentials, since the hypothesis constants
are pointwise bounds on exact derivatives.  Certificates evaluate the
eigenvalue-exclusion and smoothing-boundedness conditions literally and
report ABSENT / BOUNDED only when every inequality holds strictly; failure of
a sufficient condition is always INCONCLUSIVE, never a claim of eigenvalues.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .clifford import CliffordRep
from .grid import GridSpec, SpinorField, gradient, gradient_norm_sq, inner, l2_norm, radius
from . import operators as ops

DIVERGENCE_CAP = 1e15


@dataclass
class PotentialSpec:
    """A named potential with analytic derivative and commutator data.

    Scalar entries are v(r) * I; `constant_matrix` generalizes to v(r) * B for
    a fixed Hermitian B (the mass-coupled Coulomb case); fully directional
    entries supply matrix_at directly.  The q_i(r) callables are radial
    majorants (suprema over directions at radius r) of

        q1 = |grad V|, q2 = max_j |[alpha_j, V]|, q3 = |(x.grad){V, beta}|,
        q4 = |[beta, V]|,

    all in the pointwise operator 2-norm.
    """

    name: str
    couplings: dict
    rep: CliffordRep
    is_scalar: bool
    scalar_profile: object = None        # v(r)
    scalar_grad_profile: object = None   # v'(r)
    constant_matrix: np.ndarray = None   # B in V = v(r) B (None means I)
    matrix_at_fn: object = None          # points (M, d) -> (M, N, N)
    gradient_at_fn: object = None        # points (M, d) -> (M, d, N, N)
    alpha_comm_fn: object = None         # (points, j) -> (M, N, N) or None
    beta_comm_fn: object = None          # points -> (M, N, N) or None
    xgrad_anticomm_beta_fn: object = None  # points -> (M, N, N)
    q1: object = None
    q2: object = None
    q3: object = None
    q4: object = None
    kato_a: float | None = None
    kato_a_rigorous: bool = False
    singularity: str = ""
    decay: str = ""
    _grid_cache: dict = field(default_factory=dict, repr=False)

    # -- pointwise evaluation ------------------------------------------------

    def matrix_at(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=float))
        if self.matrix_at_fn is not None:
            return self.matrix_at_fn(points)
        r = np.linalg.norm(points, axis=1)
        B = self._base_matrix()
        return self.scalar_profile(r)[:, None, None] * B[None, :, :]

    def gradient_at(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=float))
        if self.gradient_at_fn is not None:
            return self.gradient_at_fn(points)
        r = np.linalg.norm(points, axis=1)
        B = self._base_matrix()
        dv = self.scalar_grad_profile(r)
        unit = points / r[:, None]
        return (dv[:, None] * unit)[:, :, None, None] * B[None, None, :, :]

    def alpha_comm_at(self, points: np.ndarray, j: int) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=float))
        if self.alpha_comm_fn is not None:
            return self.alpha_comm_fn(points, j)
        if self.is_scalar:
            M = points.shape[0]
            return np.zeros((M, self.rep.N, self.rep.N), dtype=np.complex128)
        r = np.linalg.norm(points, axis=1)
        B = self._base_matrix()
        comm = self.rep.alphas[j] @ B - B @ self.rep.alphas[j]
        return self.scalar_profile(r)[:, None, None] * comm[None, :, :]

    def beta_comm_at(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=float))
        if self.beta_comm_fn is not None:
            return self.beta_comm_fn(points)
        if self.is_scalar:
            M = points.shape[0]
            return np.zeros((M, self.rep.N, self.rep.N), dtype=np.complex128)
        r = np.linalg.norm(points, axis=1)
        B = self._base_matrix()
        comm = self.rep.beta @ B - B @ self.rep.beta
        return self.scalar_profile(r)[:, None, None] * comm[None, :, :]

    def xgrad_anticomm_beta_at(self, points: np.ndarray) -> np.ndarray:
        """(x.grad){V, beta} pointwise."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        if self.xgrad_anticomm_beta_fn is not None:
            return self.xgrad_anticomm_beta_fn(points)
        r = np.linalg.norm(points, axis=1)
        B = self._base_matrix()
        anti = B @ self.rep.beta + self.rep.beta @ B
        dv = self.scalar_grad_profile(r)
        return (r * dv)[:, None, None] * anti[None, :, :]

    def xgrad_V_at(self, points: np.ndarray) -> np.ndarray:
        """(x.grad) V pointwise, contracted from the gradient."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        grad = self.gradient_at(points)
        return np.einsum("md,mdab->mab", points, grad)

    def _base_matrix(self) -> np.ndarray:
        if self.constant_matrix is not None:
            return self.constant_matrix
        return np.eye(self.rep.N, dtype=np.complex128)

    # -- grid evaluation with caching ---------------------------------------

    def matrix_on_grid(self, grid: GridSpec) -> np.ndarray:
        """(N, N, *shape) array of V at the grid nodes."""
        key = ("matrix", grid)
        if key not in self._grid_cache:
            pts = _grid_points(grid)
            mats = self.matrix_at(pts)  # (M, N, N)
            self._grid_cache[key] = np.ascontiguousarray(
                np.moveaxis(mats, 0, -1).reshape((self.rep.N, self.rep.N) + grid.shape)
            )
        return self._grid_cache[key]

    def gradient_on_grid(self, grid: GridSpec) -> list:
        """Per-axis dV_j on the grid: scalar arrays for scalar entries,
        (N, N, *shape) otherwise."""
        key = ("gradient", grid)
        if key not in self._grid_cache:
            if self.is_scalar:
                r = radius(grid)
                dv = self.scalar_grad_profile(r)
                out = [dv * grid.coord(j) / r for j in range(grid.d)]
            else:
                pts = _grid_points(grid)
                grad = self.gradient_at(pts)  # (M, d, N, N)
                out = [
                    np.moveaxis(grad[:, j], 0, -1).reshape(
                        (self.rep.N, self.rep.N) + grid.shape
                    )
                    for j in range(grid.d)
                ]
            self._grid_cache[key] = out
        return self._grid_cache[key]

    def alpha_commutator_on_grid(self, grid: GridSpec, j: int):
        if self.is_scalar:
            return None
        key = ("alpha_comm", grid, j)
        if key not in self._grid_cache:
            pts = _grid_points(grid)
            comm = self.alpha_comm_at(pts, j)
            self._grid_cache[key] = np.moveaxis(comm, 0, -1).reshape(
                (self.rep.N, self.rep.N) + grid.shape
            )
        return self._grid_cache[key]

    def beta_commutator_on_grid(self, grid: GridSpec):
        if self.is_scalar:
            return None
        key = ("beta_comm", grid)
        if key not in self._grid_cache:
            pts = _grid_points(grid)
            comm = self.beta_comm_at(pts)
            self._grid_cache[key] = np.moveaxis(comm, 0, -1).reshape(
                (self.rep.N, self.rep.N) + grid.shape
            )
        return self._grid_cache[key]

    def xgrad_V_on_grid(self, grid: GridSpec):
        """(x.grad)V on the grid: scalar array r v'(r) for scalar entries."""
        key = ("xgradV", grid)
        if key not in self._grid_cache:
            if self.is_scalar:
                r = radius(grid)
                self._grid_cache[key] = r * self.scalar_grad_profile(r)
            else:
                pts = _grid_points(grid)
                m = self.xgrad_V_at(pts)
                self._grid_cache[key] = np.moveaxis(m, 0, -1).reshape(
                    (self.rep.N, self.rep.N) + grid.shape
                )
        return self._grid_cache[key]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "couplings": self.couplings,
            "singularity": self.singularity,
            "decay": self.decay,
            "kato_a": self.kato_a,
            "kato_a_rigorous": self.kato_a_rigorous,
        }


def _grid_points(grid: GridSpec) -> np.ndarray:
    axes = [grid.coord(j) for j in range(grid.d)]
    pts = np.stack(np.broadcast_arrays(*axes), axis=-1).reshape(-1, grid.d)
    return pts


# ---------------------------------------------------------------------------
# catalog


def electrostatic(rep: CliffordRep, nu: float) -> PotentialSpec:
    """V = -nu / r * I."""
    d = rep.d
    return PotentialSpec(
        name="electrostatic",
        couplings={"nu": nu},
        rep=rep,
        is_scalar=True,
        scalar_profile=lambda r: -nu / r,
        scalar_grad_profile=lambda r: nu / r**2,
        q1=lambda r: abs(nu) / r**2,
        q2=lambda r: np.zeros_like(r),
        q3=lambda r: 2.0 * abs(nu) / r,
        q4=lambda r: np.zeros_like(r),
        kato_a=(2.0 * abs(nu) / (d - 2)) if d >= 3 else None,
        kato_a_rigorous=d >= 3,
        singularity="r^-1 at the origin",
        decay="r^-1 at infinity",
    )


def lorentz_scalar(rep: CliffordRep, mu: float) -> PotentialSpec:
    """V = -mu / r * beta."""
    return PotentialSpec(
        name="lorentz_scalar",
        couplings={"mu": mu},
        rep=rep,
        is_scalar=False,
        constant_matrix=rep.beta.copy(),
        scalar_profile=lambda r: -mu / r,
        scalar_grad_profile=lambda r: mu / r**2,
        q1=lambda r: abs(mu) / r**2,
        q2=lambda r: 2.0 * abs(mu) / r,
        q3=lambda r: 2.0 * abs(mu) / r,
        q4=lambda r: np.zeros_like(r),
        kato_a=(2.0 * abs(mu) / (rep.d - 2)) if rep.d >= 3 else None,
        kato_a_rigorous=False,
        singularity="r^-1 at the origin",
        decay="r^-1 at infinity",
    )


def anomalous_magnetic(rep: CliffordRep, tau: float) -> PotentialSpec:
    """V = -i tau (alpha.x) beta / r^2; anticommutes with beta."""
    d, N = rep.d, rep.N
    alphas = np.stack(rep.alphas)  # (d, N, N)
    beta = rep.beta

    def matrix_at(points):
        r2 = np.sum(points**2, axis=1)
        ax = np.einsum("md,dab->mab", points, alphas)
        return (-1j * tau / r2)[:, None, None] * (ax @ beta)

    def gradient_at(points):
        r2 = np.sum(points**2, axis=1)
        ax = np.einsum("md,dab->mab", points, alphas)  # (M, N, N)
        out = np.empty((points.shape[0], d, N, N), dtype=np.complex128)
        for k in range(d):
            mk = alphas[k][None] / r2[:, None, None] - (
                2.0 * points[:, k] / r2**2
            )[:, None, None] * ax
            out[:, k] = -1j * tau * (mk @ beta)
        return out

    def alpha_comm(points, j):
        r2 = np.sum(points**2, axis=1)
        return (-2j * tau * points[:, j] / r2)[:, None, None] * beta[None]

    def beta_comm(points):
        r2 = np.sum(points**2, axis=1)
        ax = np.einsum("md,dab->mab", points, alphas)
        return (2j * tau / r2)[:, None, None] * ax

    def xgrad_anticomm(points):
        M = points.shape[0]
        return np.zeros((M, N, N), dtype=np.complex128)

    return PotentialSpec(
        name="anomalous_magnetic",
        couplings={"tau": tau},
        rep=rep,
        is_scalar=False,
        matrix_at_fn=matrix_at,
        gradient_at_fn=gradient_at,
        alpha_comm_fn=alpha_comm,
        beta_comm_fn=beta_comm,
        xgrad_anticomm_beta_fn=xgrad_anticomm,
        q1=lambda r: np.sqrt(d) * abs(tau) / r**2,
        q2=lambda r: 2.0 * abs(tau) / r,
        q3=lambda r: np.zeros_like(r),
        q4=lambda r: 2.0 * abs(tau) / r,
        kato_a=(2.0 * abs(tau) / (d - 2)) if d >= 3 else None,
        kato_a_rigorous=False,
        singularity="r^-1 at the origin",
        decay="r^-1 at infinity",
    )


def smooth_coulomb(rep: CliffordRep, nu: float, epsilon: float) -> PotentialSpec:
    """V = -nu (r^(1-eps) + r^(1+eps))^-1 * I, the softened Coulomb family."""
    eps = float(epsilon)
    if not 0.0 < eps < 1.0:
        raise ValueError("epsilon must lie in (0, 1)")

    def g(r):
        return r ** (1.0 - eps) + r ** (1.0 + eps)

    def gprime(r):
        return (1.0 - eps) * r ** (-eps) + (1.0 + eps) * r ** (eps)

    d = rep.d
    return PotentialSpec(
        name="smooth_coulomb",
        couplings={"nu": nu, "epsilon": eps},
        rep=rep,
        is_scalar=True,
        scalar_profile=lambda r: -nu / g(r),
        scalar_grad_profile=lambda r: nu * gprime(r) / g(r) ** 2,
        q1=lambda r: abs(nu) * gprime(r) / g(r) ** 2,
        q2=lambda r: np.zeros_like(r),
        q3=lambda r: 2.0 * r * abs(nu) * gprime(r) / g(r) ** 2,
        q4=lambda r: np.zeros_like(r),
        # pointwise |V| <= nu/(2r), then the Hardy inequality
        kato_a=(abs(nu) / (d - 2)) if d >= 3 else None,
        kato_a_rigorous=d >= 3,
        singularity=f"r^({eps}-1) at the origin",
        decay=f"r^(-1-{eps}) at infinity",
    )


def gaussian_well(rep: CliffordRep, depth: float, width: float = 1.0) -> PotentialSpec:
    """V = -depth exp(-r^2/(2 width^2)) * I, a bounded smooth well."""
    w2 = width**2

    def v(r):
        return -depth * np.exp(-(r**2) / (2.0 * w2))

    def dv(r):
        return depth * (r / w2) * np.exp(-(r**2) / (2.0 * w2))

    return PotentialSpec(
        name="gaussian_well",
        couplings={"depth": depth, "width": width},
        rep=rep,
        is_scalar=True,
        scalar_profile=v,
        scalar_grad_profile=dv,
        q1=lambda r: np.abs(dv(r)),
        q2=lambda r: np.zeros_like(r),
        q3=lambda r: 2.0 * r * np.abs(dv(r)),
        q4=lambda r: np.zeros_like(r),
        kato_a=None,
        singularity="none (bounded)",
        decay="gaussian",
    )


def zero_potential(rep: CliffordRep) -> PotentialSpec:
    return PotentialSpec(
        name="zero",
        couplings={},
        rep=rep,
        is_scalar=True,
        scalar_profile=lambda r: np.zeros_like(r),
        scalar_grad_profile=lambda r: np.zeros_like(r),
        q1=lambda r: np.zeros_like(r),
        q2=lambda r: np.zeros_like(r),
        q3=lambda r: np.zeros_like(r),
        q4=lambda r: np.zeros_like(r),
        kato_a=0.0,
        kato_a_rigorous=True,
        singularity="none",
        decay="zero",
    )


def catalog(rep: CliffordRep) -> list:
    """One instance of each catalog family at unit couplings."""
    return [
        electrostatic(rep, nu=1.0),
        lorentz_scalar(rep, mu=1.0),
        anomalous_magnetic(rep, tau=1.0),
        smooth_coulomb(rep, nu=1.0, epsilon=0.25),
    ]


_FACTORIES = {
    "electrostatic": electrostatic,
    "lorentz_scalar": lorentz_scalar,
    "anomalous_magnetic": anomalous_magnetic,
    "smooth_coulomb": smooth_coulomb,
    "gaussian_well": gaussian_well,
    "zero": zero_potential,
}


def from_config(rep: CliffordRep, name: str, couplings: dict) -> PotentialSpec:
    """Build a catalog potential from its serialized form."""
    if name not in _FACTORIES:
        raise ValueError(f"unknown potential {name!r}; have {sorted(_FACTORIES)}")
    if name == "zero":
        return zero_potential(rep)
    return _FACTORIES[name](rep, **couplings)


# ---------------------------------------------------------------------------
# hypothesis constants


@dataclass(frozen=True)
class RadialMesh:
    """Log-uniform radial sampling for constant extraction."""

    r_min: float = 1e-6
    r_max: float = 1e6
    points: int = 20000

    def radii(self) -> np.ndarray:
        return np.geomspace(self.r_min, self.r_max, self.points)


@dataclass
class HypothesisConstants:
    C1: float
    C2: float
    C3: float
    C4: float
    epsilon: float | None
    family: str
    argmax: dict
    divergent: tuple = ()

    def as_tuple(self):
        return (self.C1, self.C2, self.C3, self.C4)

    def to_dict(self) -> dict:
        return {
            "C1": self.C1, "C2": self.C2, "C3": self.C3, "C4": self.C4,
            "epsilon": self.epsilon, "family": self.family,
            "argmax": self.argmax, "divergent": list(self.divergent),
        }


FAMILIES = ("stationary", "evolutionary-3d", "evolutionary-highd")


def _weights(family: str, epsilon: float | None):
    if family == "stationary":
        return {
            "C1": lambda r: r**-2.0,
            "C2": lambda r: 1.0 / r,
            "C3": lambda r: r**-2.0,
            "C4": lambda r: r**-2.0,
        }
    if epsilon is None:
        raise ValueError("evolutionary families need epsilon")
    eps = float(epsilon)
    two = lambda r: 1.0 / (r ** (2.0 - eps) + r ** (2.0 + eps))  # noqa: E731
    one = lambda r: 1.0 / (r ** (1.0 - eps) + r ** (1.0 + eps))  # noqa: E731
    if family == "evolutionary-3d":
        return {"C1": two, "C2": one, "C3": two, "C4": two}
    if family == "evolutionary-highd":
        # the anticommutator bound keeps the plain inverse-square weight
        return {"C1": two, "C2": one, "C3": lambda r: r**-2.0, "C4": two}
    raise ValueError(f"unknown weight family {family!r}; have {FAMILIES}")


def extract_constants(pot: PotentialSpec, family: str,
                      epsilon: float | None = None,
                      mesh: RadialMesh = RadialMesh()) -> HypothesisConstants:
    """Mesh suprema of weighted pointwise bounds.

    C_i = sup_r q_i(r) / w_i(r) over the log-uniform mesh; a non-finite or
    absurdly large supremum is reported as +inf and flagged divergent.
    """
    r = mesh.radii()
    weights = _weights(family, epsilon)
    quantities = {"C1": pot.q1, "C2": pot.q2, "C3": pot.q3, "C4": pot.q4}
    values, argmax, divergent = {}, {}, []
    for name in ("C1", "C2", "C3", "C4"):
        ratio = quantities[name](r) / weights[name](r)
        finite = np.isfinite(ratio)
        if not finite.all() or np.nanmax(ratio, initial=0.0) > DIVERGENCE_CAP:
            values[name] = float("inf")
            argmax[name] = float("nan")
            divergent.append(name)
            continue
        k = int(np.argmax(ratio))
        values[name] = float(ratio[k])
        argmax[name] = float(r[k])
    return HypothesisConstants(
        C1=values["C1"], C2=values["C2"], C3=values["C3"], C4=values["C4"],
        epsilon=epsilon, family=family, argmax=argmax, divergent=tuple(divergent),
    )


# ---------------------------------------------------------------------------
# certificates


@dataclass
class Certificate:
    theorem: str
    inputs: dict
    constants: HypothesisConstants
    inequalities: list
    verdict: str

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "inputs": self.inputs,
            "constants": self.constants.to_dict(),
            "inequalities": self.inequalities,
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def _ineq(name: str, lhs: float, rhs: float) -> dict:
    holds = bool(np.isfinite(lhs) and lhs < rhs)
    return {"name": name, "lhs": float(lhs), "rhs": float(rhs), "holds": holds}


def certify_stationary(d: int, m: float, pot: PotentialSpec,
                       constants: HypothesisConstants) -> Certificate:
    """Eigenvalue-exclusion certificate from inverse-square-scale constants."""
    if d < 3:
        raise ValueError("stationary certificates need d >= 3")
    if constants.family != "stationary":
        raise ValueError("stationary certificate needs stationary-family constants")
    C1, C2, C3, C4 = constants.as_tuple()
    if m == 0.0:
        theorem = "T1.2"
        lhs = 4.0 * C1 / (d - 2) + C2
    else:
        theorem = "T1.3"
        lhs = (
            4.0 * C1 / (d - 2)
            + C2
            + 2.0 * m * C4 / (d - 2)
            + 2.0 * m * C3 / (d - 2) ** 2
        )
    ineq = _ineq("smallness", lhs, 1.0)
    verdict = "ABSENT" if ineq["holds"] else "INCONCLUSIVE"
    return Certificate(
        theorem=theorem,
        inputs={"d": d, "m": m, "potential": pot.to_dict()},
        constants=constants,
        inequalities=[ineq],
        verdict=verdict,
    )


def _c_sq_upper(delta: float) -> float:
    """Safe upper bound for the dyadic series, without the public (0, 1/2)
    domain restriction (the series converges for any delta > 0)."""
    terms = 400
    j = np.arange(-terms, terms + 1, dtype=float)
    partial = float(np.sum(2.0 / (2.0 ** (-delta * j) + 2.0 ** (delta * j)) ** 2))
    tail = 4.0 * 2.0 ** (-2.0 * delta * terms) / (2.0 ** (2.0 * delta) - 1.0)
    return partial + tail


def certify_smoothing(d: int, m: float, pot: PotentialSpec,
                      constants: HypothesisConstants,
                      epsilon: float) -> Certificate:
    """Local-smoothing certificate; d = 3 and d >= 4 use different conditions,
    and each massless/massive variant enforces its own epsilon range."""
    if d < 3:
        raise ValueError("smoothing certificates need d >= 3")
    C1, C2, C3, C4 = constants.as_tuple()
    inputs = {"d": d, "m": m, "epsilon": epsilon, "potential": pot.to_dict()}

    if d == 3:
        if constants.family != "evolutionary-3d":
            raise ValueError("d = 3 smoothing needs evolutionary-3d constants")
        if not 0.0 < epsilon < 1.0:
            raise ValueError("epsilon must lie in (0, 1)")
        ch2 = _c_sq_upper(epsilon / 2.0)
        s2 = 3.0 * np.sqrt(2.0)
        if m == 0.0:
            theorem = "T1.5"
            lhs1 = ch2 * (s2 / 4.0 * C1 + (s2 + 12.0) / 8.0 * C2)
            lhs2 = ch2 * (s2 / 4.0 * C1 + s2 / 8.0 * C2)
        else:
            theorem = "T1.6"
            lhs1 = ch2 * (s2 / 4.0 * C1 + (s2 + 12.0) / 8.0 * C2 + s2 * m / 8.0 * C4)
            lhs2 = ch2 * (
                s2 / 4.0 * C1 + s2 / 8.0 * C2 + 3.0 * m / 8.0 * C3 + s2 * m / 8.0 * C4
            )
        ineqs = [_ineq("gradient-scale", lhs1, 1.0 / 6.0),
                 _ineq("sphere-scale", lhs2, 1.0 / 8.0)]
    else:
        if constants.family != "evolutionary-highd":
            raise ValueError("d >= 4 smoothing needs evolutionary-highd constants")
        if m == 0.0:
            theorem = "T1.7"
            if not 0.0 < epsilon < 0.5:
                raise ValueError("epsilon must lie in (0, 1/2) for the massless case")
        else:
            theorem = "T1.8"
            if not 0.0 < epsilon < 1.0:
                raise ValueError("epsilon must lie in (0, 1)")
        ce = np.sqrt(_c_sq_upper(epsilon))
        ch2 = _c_sq_upper(epsilon / 2.0)
        head = 0.75 * C1 + 3.0 * (d - 1) / 16.0 * C2
        if m != 0.0:
            head += 3.0 * m / 8.0 * C4
        lhs1 = head * ce + 1.5 * C2 * ch2
        lhs2 = head * ce + (3.0 * m / 8.0 * C3 if m != 0.0 else 0.0)
        ineqs = [_ineq("gradient-scale", lhs1, (d - 1.0) / (4.0 * d)),
                 _ineq("weight-scale", lhs2, (d - 1.0) * (d - 3.0) / 8.0)]

    verdict = "BOUNDED" if all(q["holds"] for q in ineqs) else "INCONCLUSIVE"
    return Certificate(
        theorem=theorem, inputs=inputs, constants=constants,
        inequalities=ineqs, verdict=verdict,
    )


# ---------------------------------------------------------------------------
# virial diagnostics on eigenstates


@dataclass
class VirialReport:
    """Virial pairing residual and the five-term potential decomposition."""

    residual: float
    terms: dict            # I1..I5
    grad_norm_sq: float
    sum_abs_terms: float
    chain_holds: bool
    split_residual: float  # potential-term rewrite vs direct pairing

    def to_dict(self) -> dict:
        return {
            "residual": self.residual,
            "terms": self.terms,
            "grad_norm_sq": self.grad_norm_sq,
            "sum_abs_terms": self.sum_abs_terms,
            "chain_holds": self.chain_holds,
            "split_residual": self.split_residual,
        }


def potential_pairing_split(psi: SpinorField, m: float, rep: CliffordRep,
                            pot: PotentialSpec, profile=None) -> tuple:
    """(direct, split) values of the potential pairing Re<V psi, A psi> with
    A the virial operator (or its radial-multiplier variant when a profile is
    given); the split route goes through the commutator rewrite, both by
    composition, so the two agree to roundoff for any smooth state."""
    if profile is None:
        apply_gen = ops.apply_iG
        a_psi = ops.apply_L(psi, m, rep)
    else:
        # the rewrite is pure algebra, so it pairs with the exactly
        # antisymmetric realization
        apply_gen = lambda f: ops.apply_iGphi_skew(f, profile)  # noqa: E731
        a_psi = ops.apply_Lphi(psi, m, rep, profile, skew=True)
    v_psi = ops.apply_potential(psi, pot)
    direct = (inner(v_psi, a_psi)).real

    hd = lambda f: ops.apply_HD(f, m, rep)  # noqa: E731
    vmul = lambda f: ops.apply_potential(f, pot)  # noqa: E731
    comm_hdv = ops.commutator_direct(psi, hd, vmul)
    comm_gv = ops.commutator_direct(psi, apply_gen, vmul)
    split = (
        inner(comm_hdv, apply_gen(psi)).real
        - inner(comm_gv, hd(psi)).real
    )
    return direct, split


def verify_virial_on_eigenstate(psi: SpinorField, lam: float, m: float,
                                rep: CliffordRep, pot: PotentialSpec,
                                eig_tol: float = 1e-8) -> VirialReport:
    """Check the stationary virial identity on a converged eigenpair.

    Rejects pairs whose eigen-residual exceeds eig_tol.  Returns the
    normalized pairing residual |Re<H psi, L psi>| / (|psi| |L psi|), the
    five potential terms (analytic derivative data), the chain bound on the
    gradient norm, and the rewrite consistency residual.
    """
    grid = psi.grid
    h_psi = ops.apply_HD(psi, m, rep) + ops.apply_potential(psi, pot)
    nrm = l2_norm(psi)
    eig_res = l2_norm(h_psi - lam * psi) / nrm
    if eig_res > eig_tol:
        raise ValueError(f"eigenpair residual {eig_res:.3e} exceeds {eig_tol:.1e}")

    l_psi = ops.apply_L(psi, m, rep)
    residual = abs(inner(h_psi, l_psi).real) / (nrm * l2_norm(l_psi))

    # five potential terms, with closed-form derivative data
    grads = gradient(psi)
    xg = np.zeros_like(psi.values)
    for j in range(grid.d):
        xg += grid.coord(j) * grads[j].values
    x_grad_psi = SpinorField(grid, xg)

    gradv = pot.gradient_on_grid(grid)
    adotgrad = np.zeros_like(psi.values)
    for j in range(grid.d):
        term = gradv[j] * psi.values if pot.is_scalar else np.einsum(
            "ab...,b...->a...", gradv[j], psi.values)
        adotgrad += np.einsum("ab,b...->a...", rep.alphas[j], term)
    I1 = inner(SpinorField(grid, -1j * adotgrad), x_grad_psi).real

    I2 = 0.0
    if not pot.is_scalar:
        acc = np.zeros_like(psi.values)
        for j in range(grid.d):
            comm = pot.alpha_commutator_on_grid(grid, j)
            if comm is not None:
                acc += np.einsum("ab...,b...->a...", comm, grads[j].values)
        I2 = inner(SpinorField(grid, -1j * acc), x_grad_psi).real

    I3 = 0.0
    if m != 0.0 and not pot.is_scalar:
        bcomm = pot.beta_commutator_on_grid(grid)
        if bcomm is not None:
            bpsi = SpinorField(grid, np.einsum("ab...,b...->a...", bcomm, psi.values))
            I3 = m * inner(bpsi, x_grad_psi).real

    xgv = pot.xgrad_V_on_grid(grid)
    if pot.is_scalar:
        xgv_psi = SpinorField(grid, xgv * psi.values)
    else:
        xgv_psi = SpinorField(grid, np.einsum("ab...,b...->a...", xgv, psi.values))
    alpha_grad = np.zeros_like(psi.values)
    for j in range(grid.d):
        alpha_grad += np.einsum("ab,b...->a...", rep.alphas[j], grads[j].values)
    I4 = -inner(xgv_psi, SpinorField(grid, -1j * alpha_grad)).real
    I5 = 0.0
    if m != 0.0:
        beta_psi = SpinorField(grid, np.einsum("ab,b...->a...", rep.beta, psi.values))
        I5 = -m * inner(xgv_psi, beta_psi).real

    terms = {"I1": I1, "I2": I2, "I3": I3, "I4": I4, "I5": I5}
    grad_sq = gradient_norm_sq(psi)
    sum_abs = sum(abs(v) for v in terms.values())
    chain_holds = grad_sq <= sum_abs * (1.0 + 1e-4) + 1e-12

    direct, split = potential_pairing_split(psi, m, rep, pot)
    scale = max(abs(direct), abs(split), 1e-300)
    split_residual = abs(direct - split) / scale

    return VirialReport(
        residual=float(residual),
        terms=terms,
        grad_norm_sq=float(grad_sq),
        sum_abs_terms=float(sum_abs),
        chain_holds=bool(chain_holds),
        split_residual=float(split_residual),
    )
