"""Complex 1D potentials with compact support: layers, samples, analytic families.

Conventions (used throughout the package): wave equation -psi'' + v(x) psi = k^2 psi
with hbar = 2m = 1, so v carries units 1/length^2 and e^{+-ikx} are exact free
solutions. Every potential is treated as identically zero outside its support
interval; analytic families with infinite tails are truncated where |v| drops
below a configurable threshold.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import brentq

DEFAULT_TRUNCATION = 1e-12
DEFAULT_CLASS_TOL = 1e-10
DEFAULT_CLASS_SAMPLES = 2001


class PotentialError(ValueError):
    """Malformed potential description (construction-time only)."""


def _as_complex(value) -> complex:
    try:
        return complex(value)
    except (TypeError, ValueError) as exc:
        raise PotentialError(f"not a complex number: {value!r}") from exc


@dataclass(frozen=True)
class LayerPotential:
    """Piecewise-constant potential: contiguous slabs left-to-right from x_left.

    An empty layer list is the free (zero) potential; its support degenerates
    to [0, 0] by convention.
    """

    values: tuple[complex, ...]
    widths: tuple[float, ...]
    x_left: float = 0.0

    kind = "layers"

    def __post_init__(self):
        if len(self.values) != len(self.widths):
            raise PotentialError("values and widths must have equal length")
        if not np.isfinite(self.x_left):
            raise PotentialError("x_left must be finite")
        for i, w in enumerate(self.widths):
            if not (np.isfinite(w) and w > 0):
                raise PotentialError(f"layer {i}: width must be positive and finite, got {w}")
        for i, v in enumerate(self.values):
            if not np.isfinite(complex(v)):
                raise PotentialError(f"layer {i}: non-finite value {v}")
        object.__setattr__(self, "values", tuple(complex(v) for v in self.values))
        object.__setattr__(self, "widths", tuple(float(w) for w in self.widths))

    @property
    def edges(self) -> np.ndarray:
        """Layer boundary positions, length n_layers + 1."""
        return self.x_left + np.concatenate([[0.0], np.cumsum(self.widths)])

    def support_interval(self) -> tuple[float, float]:
        if not self.values:
            return (0.0, 0.0)
        e = self.edges
        return (float(e[0]), float(e[-1]))

    def evaluate(self, x):
        """Value at x (array-friendly). Interior edges take the right layer's value."""
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=complex)
        if self.values:
            e = self.edges
            idx = np.searchsorted(e, x, side="right") - 1
            inside = (x >= e[0]) & (x <= e[-1])
            idx = np.clip(idx, 0, len(self.values) - 1)
            vals = np.asarray(self.values, dtype=complex)
            out[inside] = vals[idx[inside]]
        return out if out.shape else complex(out)


@dataclass(frozen=True)
class SampledPotential:
    """Potential given on a strictly increasing grid, piecewise-linear in between."""

    xs: tuple[float, ...]
    vs: tuple[complex, ...]

    kind = "samples"

    def __post_init__(self):
        if len(self.xs) != len(self.vs):
            raise PotentialError("xs and vs must have equal length")
        if len(self.xs) < 2:
            raise PotentialError("at least 2 samples required")
        xs = np.asarray(self.xs, dtype=float)
        if not np.all(np.isfinite(xs)):
            raise PotentialError("sample abscissae must be finite")
        if not np.all(np.diff(xs) > 0):
            raise PotentialError("sample abscissae must be strictly increasing")
        object.__setattr__(self, "xs", tuple(float(x) for x in self.xs))
        object.__setattr__(self, "vs", tuple(complex(v) for v in self.vs))

    def support_interval(self) -> tuple[float, float]:
        return (self.xs[0], self.xs[-1])

    def evaluate(self, x):
        x = np.asarray(x, dtype=float)
        xs = np.asarray(self.xs)
        vs = np.asarray(self.vs, dtype=complex)
        out = np.interp(x, xs, vs.real) + 1j * np.interp(x, xs, vs.imag)
        out = np.where((x < xs[0]) | (x > xs[-1]), 0.0, out)
        return out if out.shape else complex(out)


def _scarf2(x, v1=1.0, v2=0.5, alpha=1.0):
    """Complexified Scarf II profile: -v1 sech^2(ax) + i v2 sech(ax) tanh(ax)."""
    s = 1.0 / np.cosh(alpha * x)
    return -v1 * s * s + 1j * v2 * s * np.tanh(alpha * x)


def _gaussian(x, height=1.0, width=1.0):
    return height * np.exp(-((x / width) ** 2))


ANALYTIC_FAMILIES: dict[str, Callable] = {
    "scarf2": _scarf2,
    "gaussian": _gaussian,
}


@dataclass(frozen=True)
class AnalyticPotential:
    """Named analytic profile, numerically truncated where |v| < truncation."""

    family: str
    params: dict = field(default_factory=dict)
    truncation: float = DEFAULT_TRUNCATION

    kind = "family"

    def __post_init__(self):
        if self.family not in ANALYTIC_FAMILIES:
            raise PotentialError(
                f"unknown analytic family {self.family!r}; "
                f"known: {sorted(ANALYTIC_FAMILIES)}"
            )
        if not self.truncation > 0:
            raise PotentialError("truncation threshold must be positive")
        try:
            ANALYTIC_FAMILIES[self.family](0.0, **self.params)
        except TypeError as exc:
            raise PotentialError(f"bad parameters for family {self.family!r}: {exc}") from exc
        object.__setattr__(self, "_support", _truncated_support(self._raw, self.truncation))

    def _raw(self, x):
        return ANALYTIC_FAMILIES[self.family](x, **self.params)

    def support_interval(self) -> tuple[float, float]:
        return self._support

    def evaluate(self, x):
        x = np.asarray(x, dtype=float)
        lo, hi = self._support
        out = np.where((x < lo) | (x > hi), 0.0, self._raw(x))
        return out if out.shape else complex(out)


Potential = LayerPotential | SampledPotential | AnalyticPotential


def _truncated_support(vfun, threshold) -> tuple[float, float]:
    """Interval outside which |v| stays below threshold, found by bisection per side."""

    def edge(sign: float) -> float:
        x = sign * 1.0
        if abs(vfun(x)) <= threshold:
            # walk inward; the profile may be below threshold everywhere
            while abs(x) > 1e-8 and abs(vfun(x)) <= threshold:
                x *= 0.5
            if abs(vfun(x)) <= threshold:
                return 0.0
        hi = x
        for _ in range(200):
            hi *= 2.0
            if abs(vfun(hi)) < threshold:
                break
        else:
            raise PotentialError("potential does not decay below the truncation threshold")
        return brentq(lambda t: abs(vfun(sign * abs(t))) - threshold, abs(x), abs(hi)) * sign

    lo, hi = edge(-1.0), edge(+1.0)
    if lo == 0.0 and hi == 0.0:
        return (0.0, 0.0)
    return (min(lo, 0.0), max(hi, 0.0))


@dataclass(frozen=True)
class SymmetryClass:
    """Sampled symmetry diagnosis of a potential.

    Flags are tolerance judgements on the sup-norm of the defining residuals:
    realness |Im v|, evenness |v(-x) - v(x)|, PT |v(-x)* - v(x)|.
    """

    is_real: bool
    is_even: bool
    is_pt_symmetric: bool
    real_violation: float
    even_violation: float
    pt_violation: float
    tol: float

    @property
    def has_any(self) -> bool:
        return self.is_real or self.is_even or self.is_pt_symmetric


def classify_symmetry(
    p: Potential,
    tol: float = DEFAULT_CLASS_TOL,
    n_samples: int = DEFAULT_CLASS_SAMPLES,
) -> SymmetryClass:
    """Sample a symmetric grid on [-L, L], L = max |support edge|, and test flags.

    Midpoint sampling is used so that jump discontinuities at x = 0 or at layer
    edges are not probed exactly at the jump (the pointwise value there is a
    measure-zero convention, not part of the symmetry).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if n_samples < 2:
        raise ValueError("n_samples must be >= 2")
    lo, hi = p.support_interval()
    half = max(abs(lo), abs(hi))
    if half == 0.0:
        return SymmetryClass(True, True, True, 0.0, 0.0, 0.0, tol)
    m = max(1, n_samples // 2)
    xs = (np.arange(m) + 0.5) * (half / m)
    v_pos = np.asarray(p.evaluate(xs), dtype=complex)
    v_neg = np.asarray(p.evaluate(-xs), dtype=complex)
    real_viol = float(max(np.max(np.abs(v_pos.imag)), np.max(np.abs(v_neg.imag))))
    even_viol = float(np.max(np.abs(v_neg - v_pos)))
    pt_viol = float(np.max(np.abs(np.conj(v_neg) - v_pos)))
    return SymmetryClass(
        is_real=real_viol <= tol,
        is_even=even_viol <= tol,
        is_pt_symmetric=pt_viol <= tol,
        real_violation=real_viol,
        even_violation=even_viol,
        pt_violation=pt_viol,
        tol=tol,
    )


def parse_potential_spec(text: str) -> Potential:
    """Parse the JSON potential format (see the format reference in the README).

    Accepts one of:
      {"layers": [{"re":..., "im":..., "width":...}, ...], "x0": ...}
      {"family": "...", "params": {...}}            # analytic or catalog name
      {"samples": [{"x":..., "re":..., "im":...}, ...]}
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PotentialError(f"potential spec is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise PotentialError("potential spec must be a JSON object")
    keys = [key for key in ("layers", "family", "samples") if key in doc]
    if len(keys) != 1:
        raise PotentialError(
            "potential spec must contain exactly one of 'layers', 'family', 'samples'"
        )
    mode = keys[0]
    if mode == "layers":
        layers = doc["layers"]
        if not isinstance(layers, list):
            raise PotentialError("'layers' must be a list")
        values, widths = [], []
        for i, layer in enumerate(layers):
            if not isinstance(layer, dict) or "width" not in layer:
                raise PotentialError(f"layer {i}: expected an object with a 'width' field")
            values.append(complex(float(layer.get("re", 0.0)), float(layer.get("im", 0.0))))
            widths.append(layer["width"])
        x0 = doc.get("x0", 0.0)
        if not isinstance(x0, (int, float)):
            raise PotentialError("'x0' must be a number")
        return LayerPotential(tuple(values), tuple(widths), float(x0))
    if mode == "samples":
        samples = doc["samples"]
        if not isinstance(samples, list):
            raise PotentialError("'samples' must be a list")
        try:
            xs = tuple(float(s["x"]) for s in samples)
            vs = tuple(complex(float(s.get("re", 0.0)), float(s.get("im", 0.0))) for s in samples)
        except (TypeError, KeyError) as exc:
            raise PotentialError(f"malformed sample entry: {exc}") from exc
        return SampledPotential(xs, vs)
    family = doc["family"]
    params = doc.get("params", {})
    if not isinstance(params, dict):
        raise PotentialError("'params' must be an object")
    if family in ANALYTIC_FAMILIES:
        truncation = float(doc.get("truncation", DEFAULT_TRUNCATION))
        return AnalyticPotential(family, params, truncation)
    # catalog names (layer builders) are accepted through the same syntax
    from .catalog import builtin_potential, builtin_potentials

    if family in builtin_potentials():
        return builtin_potential(family, **params)
    raise PotentialError(
        f"unknown analytic family {family!r}; known families: "
        f"{sorted(ANALYTIC_FAMILIES)}, catalog: {sorted(builtin_potentials())}"
    )
