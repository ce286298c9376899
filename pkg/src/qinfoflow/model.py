"""Exactly solvable dynamics of a qubit pair coupled through sigma_x (x) sigma_y.

The joint Hamiltonian ``H(t) = f(t) * sigma_x (x) sigma_y`` squares to a
multiple of the identity, so the propagator is

    U(t) = cos(F) I - i sin(F) sigma_x (x) sigma_y,    F(t) = integral of f,

and both marginals evolve under closed-form maps.  With ``c = cos(F)`` and
``s = sin(F)``:

    system marginal:      c^2 rho + s^2 sx rho sx + (i/2) g2 [rho, sx]
    environment marginal: c^2 omega + s^2 sy omega sy + (i/2) g1 [omega, sy]

where ``g1 = sin(2F) Tr(sx rho0)`` and ``g2 = sin(2F) Tr(sy omega0)`` carry
the only dependence on the partner's initial state.  The coupling enters all
dynamics through the accumulated angle ``F`` alone, which is what
``CouplingProfile`` parameterises.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .linalg import kron, partial_trace
from .quantum import Channel, density_from_matrix

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)

#: The two marginal labels accepted throughout the package.
PARTS = ("system", "environment")

#: Conventions for the exponential-relaxation profile.  "figure" uses
#: F = arccos(exp(-2 gamma t)) / 2, which satisfies the semigroup composition
#: law and reproduces the reference curves; "printed" uses the undivided
#: arccos and is retained only to demonstrate that it fails both.
CONVENTIONS = ("figure", "printed")

_VOLTERRA_DRIFT_TOL = 1e-8
_CUSTOM_F0_TOL = 1e-12


def _require_part(part: str) -> str:
    if part not in PARTS:
        raise ValueError(f"part must be one of {PARTS}, got {part!r}")
    return part


@dataclass(frozen=True)
class CouplingProfile:
    """Accumulated coupling angle F(t) for one of the supported drivings.

    Use the constructors: ``semigroup(gamma)`` for exponential relaxation of
    the oscillating Bloch components (``cos 2F = exp(-2 gamma t)`` under the
    default "figure" convention), ``constant(mu)`` for ``F = mu t``, and
    ``custom(f)`` for any callable with ``f(0) = 0``.
    """

    kind: str
    rate: float | None = None
    convention: str | None = None
    F_func: Callable[[float], float] | None = field(default=None, repr=False)

    @classmethod
    def semigroup(cls, gamma: float, convention: str = "figure") -> "CouplingProfile":
        if gamma <= 0.0:
            raise ValueError(f"gamma must be positive, got {gamma}")
        if convention not in CONVENTIONS:
            raise ValueError(f"convention must be one of {CONVENTIONS}, got {convention!r}")
        return cls(kind="semigroup", rate=float(gamma), convention=convention)

    @classmethod
    def constant(cls, mu: float) -> "CouplingProfile":
        if mu < 0.0:
            raise ValueError(f"mu must be non-negative, got {mu}")
        return cls(kind="constant", rate=float(mu))

    @classmethod
    def custom(cls, F_func: Callable[[float], float]) -> "CouplingProfile":
        f0 = float(F_func(0.0))
        if abs(f0) > _CUSTOM_F0_TOL:
            raise ValueError(f"custom profile must have F(0) = 0, got {f0:.3e}")
        return cls(kind="custom", F_func=F_func)

    def F(self, t: float) -> float:
        """Accumulated angle at time ``t >= 0``."""
        t = float(t)
        if t < 0.0:
            raise ValueError(f"time must be non-negative, got {t}")
        if self.kind == "semigroup":
            x = np.exp(-2.0 * self.rate * t)
            angle = float(np.arccos(np.clip(x, -1.0, 1.0)))
            return 0.5 * angle if self.convention == "figure" else angle
        if self.kind == "constant":
            return self.rate * t
        if self.kind == "custom":
            return float(self.F_func(t))
        raise ValueError(f"unknown profile kind {self.kind!r}")

    def describe(self) -> dict:
        """JSON-friendly description of the profile."""
        if self.kind == "semigroup":
            return {"kind": "semigroup", "gamma": self.rate, "convention": self.convention}
        if self.kind == "constant":
            return {"kind": "constant", "mu": self.rate}
        return {"kind": "custom"}


@dataclass(frozen=True)
class ModelState:
    """Initial data of the pair model: system state, environment state, profile."""

    rho0: np.ndarray
    omega0: np.ndarray
    profile: CouplingProfile

    def __post_init__(self) -> None:
        rho = density_from_matrix(self.rho0)
        omega = density_from_matrix(self.omega0)
        if rho.shape != (2, 2) or omega.shape != (2, 2):
            raise ValueError("the pair model takes 2x2 system and environment states")
        object.__setattr__(self, "rho0", rho)
        object.__setattr__(self, "omega0", omega)


def propagator(F: float) -> np.ndarray:
    """Joint propagator ``cos(F) I - i sin(F) sigma_x (x) sigma_y`` as a 4x4 array."""
    c = float(np.cos(F))
    s = float(np.sin(F))
    return np.array(
        [
            [c, 0.0, 0.0, -s],
            [0.0, c, s, 0.0],
            [0.0, -s, c, 0.0],
            [s, 0.0, 0.0, c],
        ],
        dtype=complex,
    )


def joint_state(ms: ModelState, t: float) -> np.ndarray:
    """Joint state ``U (rho0 (x) omega0) U^dag`` at time ``t``."""
    u = propagator(ms.profile.F(t))
    return u @ kron(ms.rho0, ms.omega0) @ u.conj().T


def reduced_state(ms: ModelState, t: float, part: str) -> np.ndarray:
    """Marginal of the joint state at time ``t`` obtained by exact partial trace."""
    _require_part(part)
    traced = "environment" if part == "system" else "system"
    return partial_trace(joint_state(ms, t), (2, 2), traced)


def closed_form_map(ms: ModelState, t: float, part: str) -> np.ndarray:
    """Marginal at time ``t`` from the closed-form reduced map.

    Agrees with :func:`reduced_state` to roundoff; the two routes are kept
    separate so each can check the other.
    """
    _require_part(part)
    f = ms.profile.F(t)
    c2 = float(np.cos(f)) ** 2
    s2 = float(np.sin(f)) ** 2
    sin2f = float(np.sin(2.0 * f))
    if part == "system":
        g2 = sin2f * float(np.trace(PAULI_Y @ ms.omega0).real)
        rho = ms.rho0
        return c2 * rho + s2 * (PAULI_X @ rho @ PAULI_X) + 0.5j * g2 * (
            rho @ PAULI_X - PAULI_X @ rho
        )
    g1 = sin2f * float(np.trace(PAULI_X @ ms.rho0).real)
    omega = ms.omega0
    return c2 * omega + s2 * (PAULI_Y @ omega @ PAULI_Y) + 0.5j * g1 * (
        omega @ PAULI_Y - PAULI_Y @ omega
    )


def reduced_channel(ms: ModelState, t: float, part: str) -> Channel:
    """The closed-form reduced map at time ``t`` packaged as a linear channel.

    The returned channel acts on arbitrary 2x2 operators (not just states),
    with the partner state's influence frozen into the coefficients, so its
    Choi matrix can be assembled from matrix units.
    """
    _require_part(part)
    f = ms.profile.F(t)
    c2 = float(np.cos(f)) ** 2
    s2 = float(np.sin(f)) ** 2
    sin2f = float(np.sin(2.0 * f))
    if part == "system":
        flip, g = PAULI_X, sin2f * float(np.trace(PAULI_Y @ ms.omega0).real)
    else:
        flip, g = PAULI_Y, sin2f * float(np.trace(PAULI_X @ ms.rho0).real)

    def apply(m: np.ndarray) -> np.ndarray:
        return c2 * m + s2 * (flip @ m @ flip) + 0.5j * g * (m @ flip - flip @ m)

    return Channel(dim_in=2, dim_out=2, apply=apply)


def _dissipator(m: np.ndarray) -> np.ndarray:
    return PAULI_X @ m @ PAULI_X - m


def generator_apply(gamma: float, rho) -> np.ndarray:
    """Semigroup generator ``gamma (sx rho sx - rho)`` applied to a state.

    This is the time-independent generator whose semigroup the "figure"
    convention of :meth:`CouplingProfile.semigroup` integrates exactly.
    """
    if gamma <= 0.0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    return gamma * _dissipator(density_from_matrix(rho))


def kernel_apply(mu: float, rho) -> np.ndarray:
    """Memory kernel ``2 mu^2 (sx rho sx - rho)`` applied to a state.

    The kernel is time independent; it drives the oscillating Bloch
    components as ``d^2c/dt^2 = -4 mu^2 c``, matching the constant profile.
    """
    if mu < 0.0:
        raise ValueError(f"mu must be non-negative, got {mu}")
    return 2.0 * mu * mu * _dissipator(density_from_matrix(rho))


def volterra_solve(mu: float, rho0, times) -> np.ndarray:
    """March the memory-kernel equation of motion on a uniform grid.

    Solves ``drho/dt = integral_0^t K(rho(tau)) dtau`` with the kernel of
    :func:`kernel_apply` using a trapezoidal predictor-corrector of global
    order two.  Because the kernel is linear and time independent, the running
    trapezoidal quadrature of the history collapses to the kernel applied to
    the running integral of the state, which the march maintains
    incrementally.

    :param mu: kernel strength, ``mu >= 0``.
    :param rho0: initial 2x2 density matrix.
    :param times: uniform, strictly increasing grid starting at 0.
    :return: array of shape ``(len(times), 2, 2)`` with the state per node.
    """
    if mu < 0.0:
        raise ValueError(f"mu must be non-negative, got {mu}")
    rho0 = density_from_matrix(rho0)
    if rho0.shape != (2, 2):
        raise ValueError("volterra_solve takes a 2x2 initial state")
    ts = np.asarray(times, dtype=float)
    if ts.ndim != 1 or ts.size < 2:
        raise ValueError("times must be a 1-D grid with at least two nodes")
    if abs(ts[0]) > 1e-12:
        raise ValueError(f"grid must start at 0, got t0 = {ts[0]}")
    h = float(ts[1] - ts[0])
    if h <= 0.0:
        raise ValueError("grid step must be positive")
    if float(np.abs(np.diff(ts) - h).max()) > 1e-12 * max(1.0, h):
        raise ValueError("non-uniform grid: volterra_solve needs a fixed step")

    factor = 2.0 * mu * mu
    out = np.empty((ts.size, 2, 2), dtype=complex)
    out[0] = rho0
    y = rho0.astype(complex)
    integ = np.zeros((2, 2), dtype=complex)
    for n in range(ts.size - 1):
        phi = factor * _dissipator(integ)
        y_pred = y + h * phi
        integ_pred = integ + 0.5 * h * (y + y_pred)
        phi_pred = factor * _dissipator(integ_pred)
        y_next = y + 0.5 * h * (phi + phi_pred)
        integ = integ + 0.5 * h * (y + y_next)
        y = y_next
        out[n + 1] = y

    herm_drift = float(np.abs(out - out.conj().transpose(0, 2, 1)).max())
    trace_drift = float(np.abs(np.einsum("tii->t", out) - 1.0).max())
    if herm_drift > _VOLTERRA_DRIFT_TOL or trace_drift > _VOLTERRA_DRIFT_TOL:
        raise RuntimeError(
            f"volterra march drifted: hermiticity {herm_drift:.3e}, trace {trace_drift:.3e}"
        )
    return out
