"""Heat diffusion on a graph, ``dh/dt = -L h``.

Two independent solvers: explicit Euler stepping with the map
``h <- (I - dt L) h``, and the closed-form modal solution
``h(t) = sum_u a_u exp(-gamma_u t) u_u`` built from the eigenpairs of ``L``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .eigen import Spectrum, sym_eig
from .errors import InvalidData, ShapeError, UnstableStep


@dataclass(frozen=True, eq=False)
class HeatState:
    temperatures: np.ndarray
    time: float = 0.0
    unstable: bool = False

    @property
    def total_heat(self) -> float:
        return float(np.sum(self.temperatures))


def _as_heat(h0, n: int) -> tuple[np.ndarray, float]:
    if isinstance(h0, HeatState):
        h, t0 = h0.temperatures, h0.time
    else:
        h, t0 = h0, 0.0
    h = np.array(h, dtype=float)
    if h.shape != (n,):
        raise ShapeError(f"heat vector has shape {h.shape}, expected ({n},)")
    if not np.all(np.isfinite(h)):
        raise InvalidData("heat vector contains non-finite entries")
    return h, float(t0)


def _largest_eigenvalue(L: np.ndarray) -> float:
    if L.size == 0:
        return 0.0
    return float(sym_eig(L).eigenvalues[-1])


def max_stable_dt(L) -> float:
    """Largest ``dt`` for which every mode factor ``1 - dt * gamma_u`` stays positive.

    Returns ``inf`` when ``L`` has no positive eigenvalue.
    """
    gmax = _largest_eigenvalue(np.asarray(L, dtype=float))
    return np.inf if gmax <= 0 else 1.0 / gmax


def mode_decay_factors(L, dt: float) -> np.ndarray:
    """Eigenvalues ``1 - dt * gamma_u`` of the Euler map, in ascending-gamma order."""
    if dt < 0:
        raise ValueError("dt must be nonnegative")
    return 1.0 - dt * sym_eig(L).eigenvalues


def step_discrete(L, h0, dt: float, n_steps: int, on_unstable: str = "raise") -> HeatState:
    """Apply ``h <- (I - dt L) h`` ``n_steps`` times.

    The Euler map diverges once ``dt >= 2 / gamma_max``. ``on_unstable``
    decides what happens then: ``"raise"`` raises :class:`UnstableStep`,
    ``"warn"`` returns a state with ``unstable=True``.
    """
    L = np.asarray(L, dtype=float)
    n = L.shape[0]
    if L.shape != (n, n):
        raise ShapeError(f"L must be square, got {L.shape}")
    h, t0 = _as_heat(h0, n)
    if not dt > 0:
        raise ValueError("dt must be > 0")
    if n_steps < 0:
        raise ValueError("n_steps must be >= 0")
    if on_unstable not in ("raise", "warn"):
        raise ValueError(f"unknown on_unstable mode {on_unstable!r}")

    unstable = False
    # Gershgorin: gamma_max <= 2 max_i L_ii, so small steps skip the eigensolve
    gersh = 2.0 * float(np.max(np.diag(L), initial=0.0))
    if dt * gersh >= 2.0:
        gmax = _largest_eigenvalue(L)
        unstable = dt * gmax >= 2.0
    if unstable:
        msg = f"dt={dt} exceeds the stability limit 2/gamma_max"
        if on_unstable == "raise":
            raise UnstableStep(msg)
        warnings.warn(msg, RuntimeWarning, stacklevel=2)

    for _ in range(n_steps):
        h = h - dt * (L @ h)
    return HeatState(h, t0 + n_steps * dt, unstable)


def modal_coefficients(spec: Spectrum, h0) -> np.ndarray:
    """Coefficients ``a_u`` of ``h0`` in an orthonormal eigenbasis."""
    return spec.eigenvectors.T @ np.asarray(h0, dtype=float)


def solve_analytic(L, h0, t, spectrum: Spectrum | None = None) -> HeatState:
    """Exact solution at time ``t`` by modal decomposition of ``L``.

    ``spectrum`` may carry a precomputed :func:`sym_eig` result of ``L``.
    """
    L = np.asarray(L, dtype=float)
    n = L.shape[0]
    h, t0 = _as_heat(h0, n)
    spec = spectrum if spectrum is not None else sym_eig(L)
    a = modal_coefficients(spec, h)
    ht = spec.eigenvectors @ (a * np.exp(-spec.eigenvalues * float(t)))
    return HeatState(ht, t0 + float(t))


def trajectory(L, h0, times, method: str = "analytic", dt: float | None = None, on_unstable: str = "raise") -> np.ndarray:
    """Heat vectors sampled at ``times`` as rows of an ``(len(times), N)`` array.

    The discrete method steps with ``dt`` and samples the state at the step
    nearest to each requested time.
    """
    L = np.asarray(L, dtype=float)
    times = np.asarray(times, dtype=float)
    if np.any(times < 0) or np.any(np.diff(times) < 0):
        raise ValueError("sample times must be nonnegative and ascending")
    h, _ = _as_heat(h0, L.shape[0])
    if method == "analytic":
        spec = sym_eig(L)
        return np.array([solve_analytic(L, h, t, spec).temperatures for t in times])
    if method != "discrete":
        raise ValueError(f"unknown method {method!r}")
    if dt is None or not dt > 0:
        raise ValueError("discrete trajectories need dt > 0")
    rows = []
    state = HeatState(h)
    done = 0
    for t in times:
        target = int(round(t / dt))
        state = step_discrete(L, state, dt, target - done, on_unstable)
        done = target
        rows.append(state.temperatures)
    return np.array(rows)
