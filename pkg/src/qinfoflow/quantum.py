"""Validated quantum objects: states, propagators, channels, entropies.

States are plain complex ``numpy`` arrays; the constructors here enforce the
physical invariants (Hermiticity, unit trace, positivity) and report the
measured deviation instead of repairing an invalid input silently.  Channels
are represented operationally as callables and materialised only through
their action on matrix units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .linalg import DEFAULT_SUPPORT_TOL, HermEigen, as_square, herm_eig, partial_trace

#: Validation tolerance for density matrices.
DENSITY_TOL = 1e-10

#: Frobenius tolerance for the unitarity check.
UNITARY_TOL = 1e-10

#: Sentinel for a relative entropy that diverges off-support.
INFINITE_ENTROPY = math.inf


def _density_spectrum(m, tol: float, name: str) -> tuple[np.ndarray, HermEigen]:
    """Validate a density matrix and return it with its eigendecomposition."""
    a = as_square(m)
    dev = float(np.abs(a - a.conj().T).max())
    if dev > tol:
        raise ValueError(f"{name}: not Hermitian: max deviation {dev:.3e}")
    trace_dev = abs(complex(np.trace(a)) - 1.0)
    if trace_dev > tol:
        raise ValueError(f"{name}: trace != 1: deviation {trace_dev:.3e}")
    eig = herm_eig(a)
    if eig.values[-1] < -tol:
        raise ValueError(f"{name}: not PSD: min eigenvalue {eig.values[-1]:.3e}")
    return a, eig


def density_from_matrix(m, tol: float = DENSITY_TOL, name: str = "state") -> np.ndarray:
    """Validate ``m`` as a density matrix and return a read-only copy.

    Raises ``ValueError`` naming the violated invariant (Hermiticity, unit
    trace, positivity) together with the measured deviation, prefixed by
    ``name`` so callers can point at the offending input.  No silent
    renormalisation takes place.
    """
    a, _ = _density_spectrum(m, tol, name)
    out = a.copy()
    out.setflags(write=False)
    return out


def validate_unitary(m, tol: float = UNITARY_TOL) -> np.ndarray:
    """Validate ``m`` as unitary (Frobenius check on U^dag U) and return it."""
    a = as_square(m)
    dev = float(np.linalg.norm(a.conj().T @ a - np.eye(a.shape[0])))
    if dev > tol:
        raise ValueError(f"not unitary: deviation {dev:.3e}")
    return a


@dataclass(frozen=True)
class Channel:
    """A linear map on operators, represented by its action.

    ``apply`` must be linear; it is probed only on explicit matrices, so the
    map is never materialised beyond the ``dim_in**2`` matrix units needed for
    its Choi matrix.
    """

    dim_in: int
    dim_out: int
    apply: Callable[[np.ndarray], np.ndarray]

    def __post_init__(self) -> None:
        if self.dim_in < 1 or self.dim_out < 1:
            raise ValueError("channel dimensions must be positive")


def choi_of(channel: Channel) -> np.ndarray:
    """Choi matrix ``sum_ij |i><j| (x) apply(|i><j|)`` of a channel.

    The input copy is the leading tensor factor, the output the trailing one,
    so trace preservation reads ``partial_trace(choi, ..., "environment") == I``.
    """
    d_in, d_out = channel.dim_in, channel.dim_out
    choi = np.zeros((d_in * d_out, d_in * d_out), dtype=complex)
    unit = np.zeros((d_in, d_in), dtype=complex)
    for i in range(d_in):
        for j in range(d_in):
            unit[i, j] = 1.0
            block = np.asarray(channel.apply(unit.copy()), dtype=complex)
            if block.shape != (d_out, d_out):
                raise ValueError(
                    f"channel output shape {block.shape} does not match dim_out {d_out}"
                )
            choi[
                i * d_out : (i + 1) * d_out,
                j * d_out : (j + 1) * d_out,
            ] = block
            unit[i, j] = 0.0
    return choi


@dataclass(frozen=True)
class CptpReport:
    """Verdict of a complete-positivity / trace-preservation check."""

    min_eigenvalue: float
    tp_deviation: float
    cp_ok: bool
    tp_ok: bool

    @property
    def ok(self) -> bool:
        return self.cp_ok and self.tp_ok


def is_cptp(choi, dims: tuple[int, int], tol: float = 1e-10) -> CptpReport:
    """Check a Choi matrix for complete positivity and trace preservation.

    ``dims = (d_in, d_out)``.  Complete positivity requires the Hermitian part
    of the Choi matrix to be PSD (within ``tol``) and the Choi matrix itself
    to be Hermitian; trace preservation requires its output-side partial trace
    to equal the identity on the input space.
    """
    a = as_square(choi)
    d_in, d_out = int(dims[0]), int(dims[1])
    if d_in * d_out != a.shape[0]:
        raise ValueError(
            f"incompatible factorization: dims ({d_in}, {d_out}) "
            f"do not match Choi dimension {a.shape[0]}"
        )
    herm_dev = float(np.abs(a - a.conj().T).max())
    eig = herm_eig(0.5 * (a + a.conj().T))
    min_eig = float(eig.values[-1])
    reduced = partial_trace(a, (d_in, d_out), "environment")
    tp_dev = float(np.linalg.norm(reduced - np.eye(d_in)))
    return CptpReport(
        min_eigenvalue=min_eig,
        tp_deviation=tp_dev,
        cp_ok=(min_eig >= -tol and herm_dev <= tol),
        tp_ok=tp_dev <= tol,
    )


def relative_entropy(rho, sigma, support_tol: float = DEFAULT_SUPPORT_TOL) -> float:
    """Relative entropy ``Tr rho (log rho - log sigma)`` in nats.

    Returns ``math.inf`` when ``rho`` carries weight (more than
    ``support_tol``) outside the support of ``sigma``; that divergence is a
    value, not an error.  Invalid states raise ``ValueError``.
    """
    a, eig_r = _density_spectrum(rho, DENSITY_TOL, "rho")
    _, eig_s = _density_spectrum(sigma, DENSITY_TOL, "sigma")
    if a.shape != eig_s.vectors.shape:
        raise ValueError(
            f"dimension mismatch: rho is {a.shape[0]}, sigma is {eig_s.vectors.shape[0]}"
        )
    null = eig_s.values <= support_tol
    if np.any(null):
        null_vecs = eig_s.vectors[:, null]
        mass = float(np.einsum("ik,ij,jk->", null_vecs.conj(), a, null_vecs).real)
        if mass > support_tol:
            return INFINITE_ENTROPY
    vals_r = eig_r.values[eig_r.values > support_tol]
    entropy_term = float((vals_r * np.log(vals_r)).sum())
    kept = ~null
    kept_vecs = eig_s.vectors[:, kept]
    weights = np.einsum("ik,ij,jk->k", kept_vecs.conj(), a, kept_vecs).real
    cross_term = float((weights * np.log(eig_s.values[kept])).sum())
    return entropy_term - cross_term
