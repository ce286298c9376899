"""Dense complex linear algebra for small quantum systems.

Everything operates on plain ``numpy`` arrays of complex dtype and is
deterministic: identical inputs produce bit-identical outputs.  Matrices are
small by design (hard cap 64x64), so the eigensolver favours simplicity and
reproducibility over asymptotic speed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

#: Entrywise tolerance below which a matrix counts as Hermitian.
HERMITICITY_TOL = 1e-10

#: Convergence threshold for the off-diagonal Frobenius mass in Jacobi sweeps.
JACOBI_OFFDIAG_TOL = 1e-13

#: Eigenvalues at or below this threshold count as zero when taking logarithms.
DEFAULT_SUPPORT_TOL = 1e-12

#: Largest supported matrix dimension.
MAX_DIM = 64

_MAX_SWEEPS = 60
_PHASE_TOL = 1e-12
_TINY = 1e-300


def as_square(m) -> np.ndarray:
    """Coerce ``m`` to a square complex array and validate its dimension."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n < 1:
        raise ValueError("matrix dimension must be at least 1")
    if n > MAX_DIM:
        raise ValueError(f"matrix dimension {n} exceeds the supported cap of {MAX_DIM}")
    return a


def kron(a, b) -> np.ndarray:
    """Kronecker product, first factor as the leading (row-major) subsystem."""
    return np.kron(as_square(a), as_square(b))


def partial_trace(m, dims: tuple[int, int], traced: str) -> np.ndarray:
    """Trace out one tensor factor of a bipartite operator.

    :param m: square operator on the product space, system factor leading.
    :param dims: ``(d_sys, d_env)`` factor dimensions.
    :param traced: which factor is removed; ``"environment"`` keeps the
        ``d_sys x d_sys`` system marginal, ``"system"`` keeps the environment
        marginal.
    :return: the remaining marginal operator.  Linear and trace preserving.
    """
    a = as_square(m)
    d_sys, d_env = int(dims[0]), int(dims[1])
    if d_sys < 1 or d_env < 1 or d_sys * d_env != a.shape[0]:
        raise ValueError(
            f"incompatible factorization: dims ({d_sys}, {d_env}) "
            f"do not match matrix dimension {a.shape[0]}"
        )
    t = a.reshape(d_sys, d_env, d_sys, d_env)
    if traced == "environment":
        return np.einsum("ikjk->ij", t)
    if traced == "system":
        return np.einsum("kikj->ij", t)
    raise ValueError(f"traced must be 'system' or 'environment', got {traced!r}")


@dataclass(frozen=True)
class HermEigen:
    """Eigendecomposition of a Hermitian matrix.

    ``values`` are real and sorted descending; ``vectors[:, k]`` is the unit
    eigenvector for ``values[k]`` with its first nonzero component made real
    and positive, so the decomposition is unique up to exact degeneracy.
    """

    values: np.ndarray
    vectors: np.ndarray


def _offdiag_norm(h: np.ndarray) -> float:
    # Computed directly, never as sqrt(total - diagonal): that subtraction
    # cancels catastrophically once the matrix is nearly diagonal.
    d = h.copy()
    np.fill_diagonal(d, 0.0)
    return float(np.linalg.norm(d))


def herm_eig(m) -> HermEigen:
    """Eigendecomposition of a Hermitian matrix via cyclic Jacobi rotations.

    Sweeps run in a fixed (p, q) order until the off-diagonal Frobenius mass
    drops below ``JACOBI_OFFDIAG_TOL``, which makes the output deterministic.
    """
    a = as_square(m)
    dev = float(np.abs(a - a.conj().T).max())
    if dev > HERMITICITY_TOL:
        raise ValueError(f"hermiticity violated: max deviation {dev:.3e}")
    n = a.shape[0]
    h = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)
    for _ in range(_MAX_SWEEPS):
        if _offdiag_norm(h) < JACOBI_OFFDIAG_TOL:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                w = h[p, q]
                r = abs(w)
                if r < _TINY:
                    h[p, q] = 0.0
                    h[q, p] = 0.0
                    continue
                phase = w / r
                theta = 0.5 * np.arctan2(2.0 * r, h[p, p].real - h[q, q].real)
                c = np.cos(theta)
                s = np.sin(theta)
                cp = h[:, p].copy()
                cq = h[:, q].copy()
                h[:, p] = c * cp + s * np.conj(phase) * cq
                h[:, q] = -s * cp + c * np.conj(phase) * cq
                rp = h[p, :].copy()
                rq = h[q, :].copy()
                h[p, :] = c * rp + s * phase * rq
                h[q, :] = -s * rp + c * phase * rq
                h[p, q] = 0.0
                h[q, p] = 0.0
                h[p, p] = h[p, p].real
                h[q, q] = h[q, q].real
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp + s * np.conj(phase) * vq
                v[:, q] = -s * vp + c * np.conj(phase) * vq
    else:
        raise RuntimeError("Jacobi sweep did not converge")
    vals = np.diag(h).real.copy()
    order = np.argsort(-vals, kind="stable")
    vals = vals[order]
    v = v[:, order]
    for k in range(n):
        col = v[:, k]
        nz = np.nonzero(np.abs(col) > _PHASE_TOL)[0]
        if nz.size:
            lead = col[nz[0]]
            v[:, k] = col * np.conj(lead / abs(lead))
    return HermEigen(values=vals, vectors=v)


def trace_norm(m) -> float:
    """Trace norm (sum of singular values) of a square matrix.

    Hermitian inputs take the fast path through their eigenvalues; general
    inputs go through the Hermitian eigendecomposition of ``m^dag m``, with
    tiny negative eigenvalues clamped to zero before the square root.
    """
    a = as_square(m)
    if float(np.abs(a - a.conj().T).max()) <= HERMITICITY_TOL:
        return float(np.abs(herm_eig(a).values).sum())
    gram = herm_eig(a.conj().T @ a).values
    return float(np.sqrt(np.clip(gram, 0.0, None)).sum())


@dataclass(frozen=True)
class MatrixLog:
    """Principal logarithm of a PSD matrix restricted to its support.

    ``matrix`` is the log on the support subspace; ``support_rank`` counts the
    eigenvalues above the support tolerance; ``null_projector`` projects onto
    the excluded null subspace (the zero matrix when the input has full rank).
    Callers decide what the null subspace means for their quantity.
    """

    matrix: np.ndarray
    support_rank: int
    null_projector: np.ndarray


def matrix_log_hermitian(m, support_tol: float = DEFAULT_SUPPORT_TOL) -> MatrixLog:
    """Natural logarithm of a Hermitian PSD matrix on its support.

    Eigenvalues at or below ``support_tol`` are excluded from the logarithm;
    an eigenvalue below ``-support_tol`` means the input is not PSD.
    """
    eig = herm_eig(m)
    if eig.values[-1] < -support_tol:
        raise ValueError(f"not PSD: min eigenvalue {eig.values[-1]:.3e}")
    kept = eig.values > support_tol
    vecs = eig.vectors[:, kept]
    logged = vecs @ np.diag(np.log(eig.values[kept])) @ vecs.conj().T
    null_vecs = eig.vectors[:, ~kept]
    return MatrixLog(
        matrix=logged,
        support_rank=int(kept.sum()),
        null_projector=null_vecs @ null_vecs.conj().T,
    )
