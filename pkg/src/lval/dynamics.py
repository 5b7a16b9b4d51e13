"""Replicator dynamics dp/dt = 1/2 (p o p - p) in floating point.

The interaction matrix M (M_ij + M_ji = 1) corresponds to the antisymmetric
matrix b_ij = M_ij - 1/2 of the algebra.  On the simplex the field reduces to
the usual replicator form p_i ((M p)_i - 1/2).  This is the only module that
uses floats; conversion runs exact -> float, never back, except when an
interaction matrix is ingested exactly.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, TextIO

import numpy as np

from .algebra import Element, LVAlgebra
from .linalg import HALF, parse_rational
from .skew import SkewMatrix

SUM_TOL = 1e-12
DEFAULT_DT = 1e-3
DEFAULT_T_END = 100.0


class IntegrationError(FloatingPointError):
    pass


@dataclass(frozen=True)
class InteractionMatrix:
    entries: np.ndarray
    exact: tuple[tuple[Fraction, ...], ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        M = np.asarray(self.entries, dtype=np.float64)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise ValueError("interaction matrix must be square")
        dev = np.abs(M + M.T - 1.0)
        np.fill_diagonal(dev, 0.0)
        if dev.max(initial=0.0) > SUM_TOL:
            i, j = np.unravel_index(np.argmax(dev), dev.shape)
            raise ValueError(f"M[{i + 1}][{j + 1}] + M[{j + 1}][{i + 1}] != 1 (off by {dev[i, j]:.3g})")
        if np.abs(np.diag(M) - 0.5).max(initial=0.0) > SUM_TOL:
            raise ValueError("diagonal of an interaction matrix must be 1/2")
        object.__setattr__(self, "entries", M)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def from_json(cls, obj) -> "InteractionMatrix":
        if not isinstance(obj, dict) or "entries" not in obj:
            raise ValueError('interaction JSON needs "n" and "entries"')
        rows = obj["entries"]
        n = obj.get("n", len(rows))
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f'"entries" is not a {n} x {n} grid')
        exact = tuple(
            tuple(parse_rational(x) if isinstance(x, str) else Fraction(x) for x in r) for r in rows
        )
        return cls(np.array([[float(x) for x in r] for r in exact]), exact)

    def to_json(self) -> dict:
        return {"n": self.n, "entries": self.entries.tolist()}


@dataclass(frozen=True)
class FloatAlgebra:
    """Float-backed stand-in for an algebra whose matrix is not exactly rational."""

    matrix: np.ndarray

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


def to_algebra(M: InteractionMatrix) -> LVAlgebra | FloatAlgebra:
    """b_ij = M_ij - 1/2; exact when the entries pair up to 1 exactly."""
    ex = M.exact
    if ex is None:
        ex = tuple(tuple(Fraction(float(x)) for x in r) for r in M.entries)
    n = M.n
    if all(ex[i][j] + ex[j][i] == 1 for i in range(n) for j in range(i + 1, n)) and all(
        ex[i][i] == HALF for i in range(n)
    ):
        return LVAlgebra(SkewMatrix(n, tuple(tuple(x - HALF for x in r) for r in ex)))
    return FloatAlgebra(M.entries - 0.5)


def interaction_from_algebra(alg: LVAlgebra) -> InteractionMatrix:
    exact = tuple(tuple(x + HALF for x in r) for r in alg.matrix.entries)
    return InteractionMatrix(np.array([[float(x) for x in r] for r in exact]), exact)


def float_matrix(alg: LVAlgebra | FloatAlgebra | np.ndarray) -> np.ndarray:
    if isinstance(alg, LVAlgebra):
        return np.array([[float(x) for x in r] for r in alg.matrix.entries])
    if isinstance(alg, FloatAlgebra):
        return alg.matrix
    return np.asarray(alg, dtype=np.float64)


def _field(B: np.ndarray, P: np.ndarray) -> np.ndarray:
    # p o p = w(p) p + 2 p * (B p); batched over leading axes
    w = P.sum(axis=-1, keepdims=True)
    BP = np.einsum("...ij,...j->...i", B, P)
    return 0.5 * (w * P + 2.0 * P * BP - P)


def vector_field(alg, p) -> np.ndarray:
    """1/2 (p o p - p) evaluated in float64."""
    if isinstance(p, Element):
        p = [float(x) for x in p.coords]
    return _field(float_matrix(alg), np.asarray(p, dtype=np.float64))


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # (samples, n)
    left_box: bool
    sum_drift_max: float
    terminal_derivative_norm: float

    @property
    def terminal_state(self) -> np.ndarray:
        return self.states[-1]

    def summary(self) -> dict:
        return {
            "terminal_state": self.terminal_state.tolist(),
            "terminal_derivative_norm": self.terminal_derivative_norm,
            "sum_drift_max": self.sum_drift_max,
            "left_box": self.left_box,
        }

    def write_csv(self, fh: TextIO) -> None:
        n = self.states.shape[1]
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t"] + [f"p{i}" for i in range(1, n + 1)])
        for t, s in zip(self.times, self.states):
            w.writerow([repr(float(t))] + [repr(float(x)) for x in s])

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()

    def summary_json(self) -> str:
        return json.dumps(self.summary(), indent=1)


def _check_start(p0: np.ndarray) -> None:
    if p0.ndim != 1:
        raise ValueError("p0 must be a vector")
    if not np.all(p0 > 0) or abs(p0.sum() - 1.0) > 1e-9:
        raise ValueError("p0 must lie on the open simplex (positive entries summing to 1)")


def integrate_batch(
    matrices: np.ndarray,
    starts: np.ndarray,
    t_end: float = DEFAULT_T_END,
    dt: float = DEFAULT_DT,
    stride: int = 1,
    box_eps: float = 1e-9,
    renormalize: bool = False,
) -> list[Trajectory]:
    """Classical RK4 on K independent systems at once (shapes (K,n,n), (K,n)).

    The sum s = sum_i p_i obeys ds/dt = (s^2 - s)/2, so the simplex is
    invariant but repelling at rate 1/2: rounding errors in s grow like
    exp(t/2).  ``renormalize`` projects back onto sum 1 after every step;
    it is off by default so that drift stays observable.
    """
    B = np.asarray(matrices, dtype=np.float64)
    P = np.array(starts, dtype=np.float64)
    if dt <= 0:
        raise ValueError("dt must be positive")
    if stride < 1:
        raise ValueError("stride must be at least 1")
    for p in P:
        _check_start(p)
    steps = int(round(t_end / dt))
    K, n = P.shape
    times = [0.0]
    saved = [P.copy()]
    drift = np.abs(P.sum(axis=1) - 1.0)
    left = np.zeros(K, dtype=bool)
    h = dt
    with np.errstate(over="raise", invalid="raise"):
        for step in range(1, steps + 1):
            try:
                k1 = _field(B, P)
                k2 = _field(B, P + 0.5 * h * k1)
                k3 = _field(B, P + 0.5 * h * k2)
                k4 = _field(B, P + h * k3)
                P = P + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
                if renormalize:
                    P = P / P.sum(axis=1, keepdims=True)
            except FloatingPointError as exc:
                raise IntegrationError(f"overflow or NaN at step {step} (t={step * h:g}): {exc}") from None
            if not np.all(np.isfinite(P)):
                raise IntegrationError(f"non-finite state at step {step} (t={step * h:g})")
            np.maximum(drift, np.abs(P.sum(axis=1) - 1.0), out=drift)
            left |= np.any((P < -box_eps) | (P > 1.0 + box_eps), axis=1)
            if step % stride == 0 or step == steps:
                times.append(step * h)
                saved.append(P.copy())
    T = np.array(times)
    S = np.stack(saved, axis=1)  # (K, samples, n)
    norms = np.abs(_field(B, P)).max(axis=1)
    return [Trajectory(T, S[k], bool(left[k]), float(drift[k]), float(norms[k])) for k in range(K)]


def integrate(
    alg,
    p0: Sequence[float],
    t_end: float = DEFAULT_T_END,
    dt: float = DEFAULT_DT,
    stride: int = 1,
    renormalize: bool = False,
) -> Trajectory:
    """RK4 trajectory from ``p0`` (see :func:`integrate_batch`)."""
    B = float_matrix(alg)
    P0 = np.asarray(p0, dtype=np.float64)[None]
    return integrate_batch(B[None], P0, t_end, dt, stride, renormalize=renormalize)[0]
