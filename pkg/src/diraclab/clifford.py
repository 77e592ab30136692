"""Dirac matrices in arbitrary spatial dimension.

Builds Hermitian matrices alpha_1..alpha_d, beta on C^N, N = 2^floor((d+1)/2),
satisfying the anticommutation relations

    {alpha_j, alpha_k} = 2 delta_jk I,   {alpha_j, beta} = 0,   beta^2 = I.

The construction is a fixed recursive tensor-product doubling of the Pauli
matrices, so every entry is in {0, +-1, +-i} and all relation checks are exact
up to roundoff.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=np.complex128)

REL_TOL = 1e-12


def spinor_dimension(d: int) -> int:
    """N = 2^floor((d+1)/2)."""
    return 2 ** ((d + 1) // 2)


@dataclass(frozen=True)
class CliffordRep:
    """A concrete set of Dirac matrices for spatial dimension d."""

    d: int
    N: int
    alphas: tuple  # d Hermitian N x N arrays
    beta: np.ndarray

    def alpha_dot(self, v) -> np.ndarray:
        """The matrix sum_j v_j alpha_j for a real or complex d-vector v."""
        v = np.asarray(v)
        out = np.zeros((self.N, self.N), dtype=np.complex128)
        for j in range(self.d):
            out += v[j] * self.alphas[j]
        return out

    def to_json(self) -> str:
        """Serialize matrices as row-major arrays of [re, im] pairs."""
        def enc(m):
            return [[[float(z.real), float(z.imag)] for z in row] for row in m]

        payload = {
            "d": self.d,
            "N": self.N,
            "alphas": [enc(a) for a in self.alphas],
            "beta": enc(self.beta),
        }
        return json.dumps(payload, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "CliffordRep":
        payload = json.loads(text)

        def dec(m):
            return np.array([[complex(re, im) for re, im in row] for row in m])

        return CliffordRep(
            d=payload["d"],
            N=payload["N"],
            alphas=tuple(dec(a) for a in payload["alphas"]),
            beta=dec(payload["beta"]),
        )


def build_dirac_matrices(d: int) -> CliffordRep:
    """Construct Dirac matrices for spatial dimension d >= 1.

    d=1: alpha_1 = sigma_1, beta = sigma_3.  d=2 adds alpha_2 = sigma_2.
    The step d -> d+2 doubles the spinor dimension: old alphas and the old
    beta move into the off-diagonal alpha slots and a fresh sigma_3 x I
    becomes the new beta.
    """
    if d < 1:
        raise ValueError(f"spatial dimension must be >= 1, got {d}")

    if d % 2 == 1:
        alphas = [SIGMA_1]
        beta = SIGMA_3
        dim = 1
    else:
        alphas = [SIGMA_1, SIGMA_2]
        beta = SIGMA_3
        dim = 2

    while dim < d:
        eye = np.eye(alphas[0].shape[0], dtype=np.complex128)
        new_alphas = [np.kron(SIGMA_1, a) for a in alphas]
        new_alphas.append(np.kron(SIGMA_1, beta))
        new_alphas.append(np.kron(SIGMA_2, eye))
        beta = np.kron(SIGMA_3, eye)
        alphas = new_alphas
        dim += 2

    rep = CliffordRep(d=d, N=alphas[0].shape[0], alphas=tuple(alphas), beta=beta)
    assert rep.N == spinor_dimension(d)
    return rep


def verify_clifford(rep: CliffordRep) -> float:
    """Max residual over all anticommutation relations and Hermiticity checks.

    Returns the entrywise sup norm of the worst violation; 0 (up to roundoff)
    for any output of build_dirac_matrices.
    """
    eye = np.eye(rep.N)
    worst = 0.0
    mats = list(rep.alphas) + [rep.beta]
    for m in mats:
        worst = max(worst, float(np.abs(m - m.conj().T).max()))
    for j, aj in enumerate(rep.alphas):
        for k, ak in enumerate(rep.alphas):
            target = 2.0 * eye if j == k else 0.0
            worst = max(worst, float(np.abs(aj @ ak + ak @ aj - target).max()))
        worst = max(worst, float(np.abs(aj @ rep.beta + rep.beta @ aj).max()))
    worst = max(worst, float(np.abs(rep.beta @ rep.beta - eye).max()))
    return worst


def matrix_identity_check(T: np.ndarray, A: np.ndarray) -> float:
    """Sup-norm residual of [T, {T, A}] - [T^2, A].

    The identity is exact for any pair of square matrices of equal size, so
    this is a sanity oracle: the result is roundoff-level for any input.
    """
    T = np.asarray(T, dtype=np.complex128)
    A = np.asarray(A, dtype=np.complex128)
    if T.shape != A.shape or T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise ValueError(f"need equal square shapes, got {T.shape} and {A.shape}")
    anti = T @ A + A @ T
    lhs = T @ anti - anti @ T
    T2 = T @ T
    rhs = T2 @ A - A @ T2
    return float(np.abs(lhs - rhs).max())
