"""Adjacency spectra and the quadratic-form primitives built on them."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import backend
from .errors import ConvergenceFailure, GraphError, InvalidR, LengthMismatch
from .graph import Graph

JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
# coordinates within this of the max |v_k| count as tied for the sign rule
_SIGN_TIE = 1e-9


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Full eigendecomposition of an adjacency matrix.

    ``eigenvalues`` are sorted descending and ``eigenvectors[i]`` (a row) is the
    unit eigenvector paired with ``eigenvalues[i]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residual: float
    sweeps: int = 0

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]

    @property
    def mu1(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def mu2(self) -> float | None:
        return float(self.eigenvalues[1]) if self.n >= 2 else None

    def vector(self, i: int) -> np.ndarray:
        return self.eigenvectors[i]

    def orthonormality_defect(self) -> float:
        e = self.eigenvectors
        return float(np.abs(e @ e.T - np.eye(self.n)).max()) if self.n else 0.0


def _canonical_sign(v: np.ndarray) -> np.ndarray:
    mags = np.abs(v)
    k = int(np.argmax(mags >= mags.max() - _SIGN_TIE))
    return -v if v[k] < 0 else v


def eigendecompose(g: Graph, kernel=None) -> Spectrum:
    """Eigendecomposition of ``A_G`` by cyclic Jacobi rotations.

    Each eigenvector is flipped so that its first coordinate of largest
    magnitude is non-negative; eigenvalues are ordered descending with ties
    broken lexicographically on the sign-normalised vectors.  ``kernel``
    overrides the backend module (tests use it to pit the compiled solver
    against the pure-Python one).
    """
    if g.n < 1:
        raise GraphError("eigendecomposition needs at least one vertex")
    kernel = kernel or backend
    a = g.adjacency()
    w, v, sweeps, off, converged = kernel.jacobi_eigh(a, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    if not converged:
        raise ConvergenceFailure(
            f"Jacobi off-diagonal norm {off:.3e} after {sweeps} sweeps (n={g.n})"
        )
    vecs = np.array([_canonical_sign(v[:, i]) for i in range(g.n)])
    order = sorted(range(g.n), key=lambda i: (-w[i], tuple(vecs[i])))
    w = w[order]
    vecs = vecs[order]
    residual = float(np.abs(a @ vecs.T - vecs.T * w).max())
    return Spectrum(_frozen(np.ascontiguousarray(w)), _frozen(np.ascontiguousarray(vecs)), residual, sweeps)


def hadamard(x, y) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        raise LengthMismatch(f"cannot multiply vectors of shapes {x.shape} and {y.shape}")
    return x * y


def _check_r(r: float) -> None:
    if not r > 1:
        raise InvalidR(f"r must exceed 1, got {r}")


def kg_bilinear(g: Graph, coeff: float, x, y) -> float:
    """``xᵀ(coeff·J − A)y`` without forming ``J``."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != (g.n,) or y.shape != (g.n,):
        raise LengthMismatch(f"vectors must have length n = {g.n}")
    return float(coeff * x.sum() * y.sum() - x @ (g.adjacency() @ y))


def kg_quadratic_form(g: Graph, r: float, x) -> float:
    """``xᵀ K x`` for ``K = ((r−1)/r)·J − A``, using ``xᵀJx = (Σx)²``."""
    _check_r(r)
    return kg_bilinear(g, (r - 1) / r, x, x)


def kg_matrix(g: Graph, r: float) -> np.ndarray:
    """Dense ``((r−1)/r)·J − A``; only for small cross-checks."""
    _check_r(r)
    return np.full((g.n, g.n), (r - 1) / r) - g.adjacency()


@dataclass(frozen=True, eq=False)
class RankTwoSplit:
    """``X = μ₁v₁v₁ᵀ + μ₂v₂v₂ᵀ`` and the remainder ``Y = A − X``."""

    X: np.ndarray
    Y: np.ndarray


def rank_two_split(spec: Spectrum, g: Graph) -> RankTwoSplit:
    if g.n < 2:
        raise GraphError("rank-two split needs n >= 2")
    v1, v2 = spec.eigenvectors[0], spec.eigenvectors[1]
    X = spec.eigenvalues[0] * np.outer(v1, v1) + spec.eigenvalues[1] * np.outer(v2, v2)
    Y = g.adjacency() - X
    return RankTwoSplit(_frozen(X), _frozen(Y))
