"""Transfer matrices M(k) and scattering amplitudes for compact-support potentials.

M(k) is the unique 2x2 complex matrix sending the plane-wave coefficients on
the left of the support to those on the right: with
psi(x) = A e^{ikx} + B e^{-ikx} outside the support,

    [A_plus, B_plus] = M(k) [A_minus, B_minus].

Coefficients are referenced to the global origin x = 0, which fixes the phases
of the reflection amplitudes. Amplitude dictionary: T = 1/M22,
R_left = -M21/M22, R_right = M12/M22. det M = 1 always.

Two backends: an exact slab-product ("stack") for piecewise-constant
potentials and an adaptive integrator ("ode") for any potential kind.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np
from scipy.integrate import solve_ivp

from . import kernels
from .potentials import LayerPotential, Potential

if TYPE_CHECKING:  # pragma: no cover
    from .identities import PhaseRecord

SINGULARITY_FLOOR = 1e-12
DEFAULT_ODE_TOL = 1e-9

STACK = "stack"
ODE = "ode"


class BackendError(RuntimeError):
    """Requested backend cannot handle this potential kind."""


class ConvergenceError(RuntimeError):
    """Adaptive integration failed to meet the requested tolerance."""


@dataclass(frozen=True)
class TransferMatrix:
    m11: complex
    m12: complex
    m21: complex
    m22: complex
    k: float
    backend: str = STACK

    @property
    def det(self) -> complex:
        return self.m11 * self.m22 - self.m12 * self.m21

    @property
    def condition(self) -> float:
        """|M22|: proximity to a spectral singularity (0 = singular)."""
        return abs(self.m22)

    def as_array(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]], dtype=complex)

    @classmethod
    def from_array(cls, m, k: float, backend: str = STACK) -> "TransferMatrix":
        m = np.asarray(m, dtype=complex)
        return cls(complex(m[0, 0]), complex(m[0, 1]), complex(m[1, 0]), complex(m[1, 1]),
                   float(k), backend)


@dataclass(frozen=True)
class AsymptoticCoefficients:
    """Plane-wave coefficients (A, B) on each side of the support."""

    a_minus: complex
    b_minus: complex
    a_plus: complex
    b_plus: complex


def apply_transfer(m: TransferMatrix, a_minus: complex, b_minus: complex) -> AsymptoticCoefficients:
    """Propagate left coefficients through M."""
    return AsymptoticCoefficients(
        a_minus=complex(a_minus),
        b_minus=complex(b_minus),
        a_plus=m.m11 * a_minus + m.m12 * b_minus,
        b_plus=m.m21 * a_minus + m.m22 * b_minus,
    )


@dataclass(frozen=True)
class ScatteringData:
    """Amplitude triple at one wavenumber with the derived combination D.

    D = T^2 - R_left R_right controls the negative-k amplitude relations.
    finite is False at (numerical) spectral singularities, where |M22| fell
    below the singularity floor and the amplitudes diverge.
    """

    k: float
    T: complex
    R_left: complex
    R_right: complex
    D: complex
    finite: bool
    condition: float
    backend: str = STACK
    phases: "PhaseRecord | None" = field(default=None, compare=False)


def layer_matrix(v0: complex, width: float, k: float, x_left: float = 0.0) -> TransferMatrix:
    """Exact transfer matrix of one constant slab of value v0 on [x_left, x_left + width].

    Interior wavenumber kappa = sqrt(k^2 - v0), principal branch; all matrix
    entries are even in kappa so the branch choice cannot be observed.
    """
    if k == 0:
        raise ValueError("k = 0: zero-energy scattering is excluded")
    if not width > 0:
        raise ValueError("width must be positive")
    m = kernels.stack_transfer(
        np.array([v0], dtype=complex), np.array([width], dtype=float), x_left,
        np.array([k], dtype=float),
    )[0]
    return TransferMatrix.from_array(m, k, STACK)


def transfer_matrix_stack(p: Potential, k: float) -> TransferMatrix:
    """Slab-product transfer matrix; exact for piecewise-constant potentials."""
    return TransferMatrix.from_array(stack_matrices(p, [k])[0], k, STACK)


def stack_matrices(p: Potential, ks) -> np.ndarray:
    """Vectorized stack backend over a k array; shape (len(ks), 2, 2)."""
    if not isinstance(p, LayerPotential):
        raise BackendError(f"stack backend requires a layer potential, got kind {p.kind!r}")
    ks = np.asarray(ks, dtype=float)
    if np.any(ks == 0):
        raise ValueError("k = 0: zero-energy scattering is excluded")
    if not p.values:
        out = np.zeros((ks.size, 2, 2), dtype=complex)
        out[:, 0, 0] = 1.0
        out[:, 1, 1] = 1.0
        return out
    return kernels.stack_transfer(
        np.asarray(p.values, dtype=complex), np.asarray(p.widths, dtype=float),
        p.x_left, ks,
    )


def _ode_segments(p: Potential) -> list[tuple[float, float]]:
    if isinstance(p, LayerPotential) and p.values:
        e = p.edges
        return [(float(a), float(b)) for a, b in zip(e[:-1], e[1:])]
    lo, hi = p.support_interval()
    return [(lo, hi)]


def transfer_matrix_ode(p: Potential, k: float, tol: float = DEFAULT_ODE_TOL) -> TransferMatrix:
    """Integrate -psi'' + v psi = k^2 psi across the support, column by column.

    Initial data at the left support edge are exact plane waves e^{+-ikx}
    (valid because v vanishes outside the support); (A_plus, B_plus) are read
    off psi and psi' at the right edge. Both columns are propagated in one
    4-component complex system. Integration restarts at layer boundaries so
    the adaptive controller never steps across a discontinuity.
    """
    if k == 0:
        raise ValueError("k = 0: zero-energy scattering is excluded")
    if not tol > 0:
        raise ValueError("tol must be positive")
    lo, hi = p.support_interval()
    if lo == hi:
        return TransferMatrix(1.0, 0.0, 0.0, 1.0, float(k), ODE)

    def rhs(x, y):
        v = p.evaluate(x)
        g = v - k * k
        return np.array([y[1], g * y[0], y[3], g * y[2]], dtype=complex)

    el = np.exp(1j * k * lo)
    y = np.array([el, 1j * k * el, 1.0 / el, -1j * k / el], dtype=complex)
    for a, b in _ode_segments(p):
        sol = solve_ivp(rhs, (a, b), y, method="DOP853", rtol=tol, atol=tol)
        if not sol.success:
            raise ConvergenceError(
                f"integration failed on [{a}, {b}] at k={k}: {sol.message}"
            )
        y = sol.y[:, -1]
    er = np.exp(1j * k * hi)
    ik = 1j * k
    # A = e^{-ikx}(psi/2 + psi'/(2ik)), B = e^{ikx}(psi/2 - psi'/(2ik)) at x = hi
    m11 = (y[0] / 2 + y[1] / (2 * ik)) / er
    m21 = (y[0] / 2 - y[1] / (2 * ik)) * er
    m12 = (y[2] / 2 + y[3] / (2 * ik)) / er
    m22 = (y[2] / 2 - y[3] / (2 * ik)) * er
    return TransferMatrix(complex(m11), complex(m12), complex(m21), complex(m22), float(k), ODE)


def compute_transfer(p: Potential, k: float, backend: str = "auto",
                     tol: float = DEFAULT_ODE_TOL) -> TransferMatrix:
    """Dispatch: 'stack' | 'ode' | 'auto' (stack for layers, ode otherwise)."""
    if backend == "auto":
        backend = STACK if isinstance(p, LayerPotential) else ODE
    if backend == STACK:
        return transfer_matrix_stack(p, k)
    if backend == ODE:
        return transfer_matrix_ode(p, k, tol)
    raise ValueError(f"unknown backend {backend!r}")


def scattering_data(m: TransferMatrix, singularity_floor: float = SINGULARITY_FLOOR) -> ScatteringData:
    """Amplitudes from the transfer-matrix dictionary; non-finite near singularities."""
    cond = abs(m.m22)
    if cond <= singularity_floor:
        nan = complex(math.nan, math.nan)
        return ScatteringData(m.k, nan, nan, nan, nan, False, cond, m.backend)
    t = 1.0 / m.m22
    r_left = -m.m21 / m.m22
    r_right = m.m12 / m.m22
    d = t * t - r_left * r_right
    return ScatteringData(m.k, t, r_left, r_right, d, True, cond, m.backend)


def matrix_from_amplitudes(t: complex, r_left: complex, r_right: complex, k: float) -> TransferMatrix:
    """Inverse dictionary: rebuild M from (T, R_left, R_right). Requires T != 0."""
    if t == 0:
        raise ValueError("T = 0 has no transfer-matrix preimage")
    return TransferMatrix(
        m11=t - r_left * r_right / t,
        m12=r_right / t,
        m21=-r_left / t,
        m22=1.0 / t,
        k=float(k),
        backend="dictionary",
    )


def negative_k_matrix(m: TransferMatrix) -> TransferMatrix:
    """M(-k) = sigma1 M(k) sigma1: swap M11<->M22 and M12<->M21, negate k."""
    return TransferMatrix(m.m22, m.m21, m.m12, m.m11, -m.k, m.backend)


def scattering_at(p: Potential, k: float, backend: str = "auto",
                  tol: float = DEFAULT_ODE_TOL,
                  singularity_floor: float = SINGULARITY_FLOOR) -> ScatteringData:
    """Convenience: transfer matrix then amplitudes."""
    return scattering_data(compute_transfer(p, k, backend, tol), singularity_floor)
