"""Quantum side: Bell operators, see-saw maximization, GHZ values, PPT.

Everything here is floating point with fixed tolerances, in contrast to the
exact geometry modules; rationalize() is the bridge back (quantum points are
rationalized before being handed to exact membership queries).

Only K = 2 full-correlation inequalities are optimized: the observables are
Hermitian contractions standing for +/-1-valued measurements, and the
see-saw alternates the exact best response of each block (top eigenvector
for the state, polar sign of the effective contraction for an observable),
so the objective is nondecreasing step by step.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import cos, isfinite, sqrt

import numpy as np

from .errors import (
    DimensionLimit,
    DimensionMismatch,
    InternalInvariantError,
    NonFinite,
    RepresentationMismatch,
)
from .inequality import Inequality
from .scenario import Behavior, Representation, Scenario

MAX_PRODUCT_DIM = 2**12
SEESAW_MAX_SWEEPS = 500
SEESAW_REL_TOL = 1e-10
HERMITICITY_TOL = 1e-12
SPECTRUM_TOL = 1e-10
PSD_TOL = 1e-10
VALUE_RECHECK_TOL = 1e-9


@dataclass(frozen=True)
class QuantumModel:
    """A state plus one observable per (party, setting).

    state is a unit vector (d,) or density matrix (d, d) on the tensor
    product of local_dims; observables[i][x] is Hermitian with spectrum in
    [-1, 1].
    """

    local_dims: tuple[int, ...]
    state: np.ndarray
    observables: tuple[tuple[np.ndarray, ...], ...]

    def __post_init__(self):
        dim = int(np.prod(self.local_dims))
        if self.state.shape not in ((dim,), (dim, dim)):
            raise DimensionMismatch(
                f"state shape {self.state.shape} does not match dim {dim}"
            )
        if self.state.ndim == 1:
            if abs(np.linalg.norm(self.state) - 1.0) > HERMITICITY_TOL:
                raise ValueError("state vector is not normalized")
        else:
            if abs(np.trace(self.state).real - 1.0) > HERMITICITY_TOL:
                raise ValueError("density matrix trace is not 1")
        if len(self.observables) != len(self.local_dims):
            raise DimensionMismatch("one observable tuple per party required")
        for party, per_setting in enumerate(self.observables):
            d = self.local_dims[party]
            for obs in per_setting:
                if obs.shape != (d, d):
                    raise DimensionMismatch(
                        f"observable shape {obs.shape} != ({d},{d})"
                    )
                if np.max(np.abs(obs - obs.conj().T)) > HERMITICITY_TOL:
                    raise ValueError("observable is not Hermitian")
                eigs = np.linalg.eigvalsh(obs)
                if eigs.min() < -1 - SPECTRUM_TOL or eigs.max() > 1 + SPECTRUM_TOL:
                    raise ValueError("observable spectrum outside [-1, 1]")

    @property
    def n_settings(self) -> int:
        return len(self.observables[0])

    def density_matrix(self) -> np.ndarray:
        if self.state.ndim == 1:
            return np.outer(self.state, self.state.conj())
        return self.state


@dataclass(frozen=True)
class BellValue:
    value: float
    model: QuantumModel
    inequality: Inequality
    violation_ratio: float | None
    converged: bool = True
    sweeps: int = 0
    restart_values: tuple[float, ...] = ()
    trace: tuple[tuple[float, ...], ...] = field(default=(), repr=False)


def _check_correlation_inequality(ineq: Inequality):
    if ineq.representation is not Representation.FULL_CORRELATION:
        raise RepresentationMismatch(
            "quantum evaluation needs a full-correlation inequality"
        )


def _apply_local(psi_tensor: np.ndarray, op: np.ndarray, axis: int) -> np.ndarray:
    moved = np.tensordot(op, psi_tensor, axes=([1], [axis]))
    return np.moveaxis(moved, 0, axis)


def model_correlations(model: QuantumModel, scenario: Scenario) -> np.ndarray:
    """E(s) = <product of the chosen observables> for every settings-tuple."""
    n = scenario.n_parties
    if len(model.local_dims) != n:
        raise DimensionMismatch("model party count does not match scenario")
    out = np.empty(scenario.n_settings**n)
    if model.state.ndim == 1:
        psi = model.state.reshape(model.local_dims)
        for idx, settings in enumerate(scenario.settings_tuples()):
            phi = psi
            for party, setting in enumerate(settings):
                phi = _apply_local(phi, model.observables[party][setting], party)
            out[idx] = np.vdot(psi.ravel(), phi.ravel()).real
    else:
        rho = model.density_matrix()
        for idx, settings in enumerate(scenario.settings_tuples()):
            op = _kron([model.observables[p][s] for p, s in enumerate(settings)])
            out[idx] = np.trace(rho @ op).real
    return out


def model_behavior(model: QuantumModel, scenario: Scenario,
                   rep: Representation) -> tuple[float, ...]:
    """Float behavior vector of the model (K = 2 only for probabilities)."""
    rep.validate(scenario)
    if rep is Representation.FULL_CORRELATION:
        return tuple(model_correlations(model, scenario))
    if scenario.n_outcomes != 2:
        raise RepresentationMismatch(
            "probability evaluation implemented for K = 2 observables only"
        )
    rho = model.density_matrix()
    entries = []
    for settings in scenario.settings_tuples():
        projectors = []
        for party, setting in enumerate(settings):
            obs = model.observables[party][setting]
            eye = np.eye(model.local_dims[party])
            projectors.append(((eye + obs) / 2, (eye - obs) / 2))
        for outcomes in scenario.outcomes_tuples():
            op = _kron([projectors[p][a] for p, a in enumerate(outcomes)])
            entries.append(float(np.trace(rho @ op).real))
    return tuple(entries)


def evaluate_model(ineq: Inequality, model: QuantumModel) -> float:
    """Value of the inequality's left-hand side on a fixed model."""
    behavior = model_behavior(model, ineq.scenario, ineq.representation)
    return float(sum(float(c) * x for c, x in zip(ineq.coefficients, behavior)))


def _kron(mats) -> np.ndarray:
    out = np.array([[1.0 + 0.0j]])
    for m in mats:
        out = np.kron(out, m)
    return out


def bell_operator(ineq: Inequality, observables) -> np.ndarray:
    """B = sum_s c(s) A_1^(s_1) x ... x A_N^(s_N) for a correlation inequality."""
    _check_correlation_inequality(ineq)
    sc = ineq.scenario
    if len(observables) != sc.n_parties:
        raise DimensionMismatch("one observable tuple per party required")
    dims = [obs[0].shape[0] for obs in observables]
    total = int(np.prod(dims))
    op = np.zeros((total, total), dtype=complex)
    for idx, settings in enumerate(sc.settings_tuples()):
        c = float(ineq.coefficients[idx])
        if c == 0.0:
            continue
        op += c * _kron([observables[p][s] for p, s in enumerate(settings)])
    if np.max(np.abs(op - op.conj().T)) > HERMITICITY_TOL * max(
            1.0, float(np.max(np.abs(op)))):
        raise InternalInvariantError("Bell operator is not Hermitian")
    return op


def _matrix_sign(matrix: np.ndarray) -> np.ndarray:
    """Polar sign of a Hermitian matrix: eigenvalues mapped to +/-1."""
    w, v = np.linalg.eigh(matrix)
    signs = np.where(w >= 0, 1.0, -1.0)
    out = (v * signs) @ v.conj().T
    return (out + out.conj().T) / 2


def _random_observable(rng, dim: int) -> np.ndarray:
    """Haar-basis Hermitian contraction with spectrum uniform in [-1, 1].

    A generic (non-degenerate) start: the first observable update projects
    onto +/-1 spectra anyway, while sign-
    degenerate initializations (e.g. +/- identity) stall the see-saw at
    classical fixed points.
    """
    ginibre = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(ginibre)
    q = q * (np.diagonal(r) / np.abs(np.diagonal(r)))
    spectrum = rng.uniform(-1.0, 1.0, size=dim)
    out = (q * spectrum) @ q.conj().T
    return (out + out.conj().T) / 2


def _effective_contraction(psi_tensor, observables, coeffs, scenario,
                           party: int, setting: int) -> np.ndarray:
    """G with value contribution Tr[A_(party,setting) G]: the partial
    contraction of the state against all other parties' observables."""
    n = scenario.n_parties
    other_axes = [ax for ax in range(n) if ax != party]
    dim = psi_tensor.shape[party]
    g = np.zeros((dim, dim), dtype=complex)
    for idx, settings in enumerate(scenario.settings_tuples()):
        if settings[party] != setting:
            continue
        c = float(coeffs[idx])
        if c == 0.0:
            continue
        phi = psi_tensor
        for other in other_axes:
            phi = _apply_local(phi, observables[other][settings[other]], other)
        g += c * np.tensordot(phi, psi_tensor.conj(),
                              axes=(other_axes, other_axes))
    return (g + g.conj().T) / 2


def quantum_value_seesaw(ineq: Inequality, local_dims, restarts: int = 20,
                         seed: int = 0, initial_observables=None) -> BellValue:
    """Alternating maximization of the Bell value over states and +/-1
    observables; best over seeded random restarts.

    Each block update is the exact maximizer given the rest (top eigenvector
    of the Bell operator; polar sign of the effective contraction), so the
    value is monotone nondecreasing, which is asserted every step.

    initial_observables, if given, replaces the random initialization of the
    first restart (e.g. to warm-start from a classical deterministic model).
    """
    _check_correlation_inequality(ineq)
    sc = ineq.scenario
    local_dims = tuple(int(d) for d in local_dims)
    if len(local_dims) != sc.n_parties:
        raise DimensionMismatch("one local dimension per party required")
    total = int(np.prod(local_dims))
    if total > MAX_PRODUCT_DIM:
        raise DimensionLimit(
            f"product dimension {total} exceeds {MAX_PRODUCT_DIM}"
        )
    coeffs = [float(c) for c in ineq.coefficients]

    best = None
    restart_values = []
    traces = []
    for k in range(restarts):
        rng = np.random.default_rng([seed, k])
        if k == 0 and initial_observables is not None:
            observables = [
                [np.array(obs, dtype=complex) for obs in per_setting]
                for per_setting in initial_observables
            ]
        else:
            observables = [
                [_random_observable(rng, local_dims[p])
                 for _ in range(sc.n_settings)]
                for p in range(sc.n_parties)
            ]
        value = -float("inf")
        psi = None
        converged = False
        history = []
        sweeps = 0
        for sweep in range(SEESAW_MAX_SWEEPS):
            sweeps = sweep + 1
            operator = bell_operator(ineq, observables)
            w, v = np.linalg.eigh(operator)
            new_value = float(w[-1])
            _assert_monotone(value, new_value)
            value = new_value
            psi = v[:, -1]
            psi_tensor = psi.reshape(local_dims)
            for party in range(sc.n_parties):
                for setting in range(sc.n_settings):
                    g = _effective_contraction(psi_tensor, observables, coeffs,
                                               sc, party, setting)
                    observables[party][setting] = _matrix_sign(g)
            check = float(np.vdot(psi, bell_operator(ineq, observables) @ psi).real)
            _assert_monotone(value, check)
            history.append(check)
            if abs(check - value) <= SEESAW_REL_TOL * max(1.0, abs(check)):
                value = check
                converged = True
                break
            value = check
        restart_values.append(value)
        traces.append(tuple(history))
        if best is None or value > best[0]:
            model = QuantumModel(
                local_dims, psi,
                tuple(tuple(np.array(o) for o in per) for per in observables))
            best = (value, model, converged, sweeps)

    value, model, converged, sweeps = best
    return _make_bell_value(ineq, model, value, converged=converged,
                            sweeps=sweeps,
                            restart_values=tuple(restart_values),
                            trace=tuple(traces))


def _assert_monotone(previous: float, current: float):
    if current < previous - 1e-9:
        raise InternalInvariantError(
            f"see-saw objective decreased: {previous} -> {current}"
        )


def _make_bell_value(ineq, model, value, **extra) -> BellValue:
    recheck = evaluate_model(ineq, model)
    if abs(recheck - value) > VALUE_RECHECK_TOL:
        raise InternalInvariantError(
            f"Bell value {value} differs from recomputation {recheck}"
        )
    bound = ineq.bound
    ratio = float(value / float(bound)) if bound > 0 else None
    return BellValue(value=value, model=model, inequality=ineq,
                     violation_ratio=ratio, **extra)


def _partial_trace_except(matrix: np.ndarray, local_dims, keep: int) -> np.ndarray:
    n = len(local_dims)
    tensor = matrix.reshape(tuple(local_dims) * 2)
    # trace highest parties first so lower axis positions stay put
    for ax in sorted((a for a in range(n) if a != keep), reverse=True):
        tensor = np.trace(tensor, axis1=ax, axis2=ax + tensor.ndim // 2)
    return tensor


def quantum_value_fixed_state(ineq: Inequality, rho: np.ndarray, local_dims,
                              sweeps: int = 50, seed: int = 0,
                              restarts: int = 3) -> float:
    """Maximize the Bell value over +/-1 observables with the state fixed.

    The state step of the see-saw is skipped; each observable update is still
    the exact polar-sign maximizer, so the value is monotone nondecreasing.
    Useful for quantifying what a given (e.g. PPT or separable) state can
    violate.
    """
    _check_correlation_inequality(ineq)
    sc = ineq.scenario
    local_dims = tuple(int(d) for d in local_dims)
    dim = int(np.prod(local_dims))
    if rho.shape != (dim, dim):
        raise DimensionMismatch("state shape does not match local_dims")
    coeffs = [float(c) for c in ineq.coefficients]
    best = -float("inf")
    for k in range(restarts):
        rng = np.random.default_rng([seed, k])
        observables = [
            [_random_observable(rng, local_dims[p])
             for _ in range(sc.n_settings)]
            for p in range(sc.n_parties)
        ]
        value = -float("inf")
        for _ in range(sweeps):
            for party in range(sc.n_parties):
                for setting in range(sc.n_settings):
                    g = np.zeros((local_dims[party],) * 2, dtype=complex)
                    for idx, settings in enumerate(sc.settings_tuples()):
                        if settings[party] != setting or coeffs[idx] == 0.0:
                            continue
                        embedded = _kron([
                            observables[p][s] if p != party
                            else np.eye(local_dims[p])
                            for p, s in enumerate(settings)
                        ])
                        reduced = _partial_trace_except(embedded @ rho,
                                                        local_dims, party)
                        g += coeffs[idx] * reduced
                    observables[party][setting] = _matrix_sign((g + g.conj().T) / 2)
            operator = bell_operator(ineq, observables)
            new_value = float(np.trace(rho @ operator).real)
            _assert_monotone(value, new_value)
            if abs(new_value - value) <= SEESAW_REL_TOL * max(1.0, abs(new_value)):
                value = new_value
                break
            value = new_value
        best = max(best, value)
    return best


def ghz_state(n: int) -> np.ndarray:
    psi = np.zeros(2**n, dtype=complex)
    psi[0] = 1 / sqrt(2)
    psi[-1] = 1 / sqrt(2)
    return psi


def equatorial_observable(angle: float) -> np.ndarray:
    """cos(phi) X + sin(phi) Y, the +/-1 qubit observable in the XY plane."""
    return np.array([[0, np.exp(-1j * angle)], [np.exp(1j * angle), 0]])


def ghz_value(ineq: Inequality, angles) -> BellValue:
    """Bell value of the GHZ state with XY-plane qubit observables.

    angles[i][x] is the azimuth of party i's setting-x observable.  The
    tensor contraction is the primary computation; each correlation is
    cross-checked against the closed form cos(sum_i phi_{i, s_i}) to 1e-12.
    """
    _check_correlation_inequality(ineq)
    sc = ineq.scenario
    if sc.n_settings != 2:
        raise RepresentationMismatch("GHZ evaluation expects two settings")
    angles = [[float(a) for a in per] for per in angles]
    if len(angles) != sc.n_parties or any(len(a) != 2 for a in angles):
        raise DimensionMismatch("angles must be N x 2")
    observables = tuple(
        tuple(equatorial_observable(a) for a in per) for per in angles)
    model = QuantumModel((2,) * sc.n_parties, ghz_state(sc.n_parties),
                         observables)
    correlations = model_correlations(model, sc)
    for idx, settings in enumerate(sc.settings_tuples()):
        expected = cos(sum(angles[i][s] for i, s in enumerate(settings)))
        if abs(correlations[idx] - expected) > 1e-12:
            raise InternalInvariantError(
                "GHZ contraction disagrees with the cosine closed form"
            )
    value = float(sum(float(c) * e
                      for c, e in zip(ineq.coefficients, correlations)))
    return _make_bell_value(ineq, model, value)


def bipartitions(n_parties: int) -> list[tuple[int, ...]]:
    """One transposed side per nontrivial bipartition (party 0 stays put)."""
    out = []
    for size in range(1, n_parties):
        for subset in itertools.combinations(range(1, n_parties), size):
            out.append(subset)
    return out


@dataclass(frozen=True)
class PartialTransposeReport:
    transposed: tuple[int, ...]
    psd: bool
    min_eigenvalue: float


def partial_transpose(rho: np.ndarray, local_dims, transposed) -> np.ndarray:
    n = len(local_dims)
    tensor = rho.reshape(tuple(local_dims) * 2)
    axes = list(range(2 * n))
    for party in transposed:
        axes[party], axes[n + party] = axes[n + party], axes[party]
    dim = int(np.prod(local_dims))
    return tensor.transpose(axes).reshape(dim, dim)


def ppt_check(rho: np.ndarray, local_dims) -> list[PartialTransposeReport]:
    """Minimum eigenvalue of every partial transpose of a density matrix."""
    local_dims = tuple(int(d) for d in local_dims)
    dim = int(np.prod(local_dims))
    if rho.shape != (dim, dim):
        raise DimensionMismatch(
            f"density matrix shape {rho.shape} does not match dims {local_dims}"
        )
    if np.max(np.abs(rho - rho.conj().T)) > 1e-10:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > 1e-10:
        raise ValueError("density matrix trace is not 1")
    reports = []
    for transposed in bipartitions(len(local_dims)):
        pt = partial_transpose(rho, local_dims, transposed)
        min_eig = float(np.linalg.eigvalsh(pt).min())
        reports.append(PartialTransposeReport(
            transposed, min_eig >= -PSD_TOL, min_eig))
    return reports


def rationalize(value: float, max_denominator: int) -> Fraction:
    """Last continued-fraction convergent with denominator <= max_denominator.

    Convergents are the best rational approximations of the second kind, and
    truncating when the next denominator would exceed the cap guarantees
    |value - p/q| <= 1/(q * max_denominator) whenever the result is inexact.
    """
    if not isfinite(value):
        raise NonFinite(f"cannot rationalize {value!r}")
    if max_denominator < 1:
        raise ValueError("max_denominator must be positive")
    remainder = Fraction(value)
    p_prev, q_prev = 0, 1
    p_cur, q_cur = 1, 0
    while True:
        a = remainder.numerator // remainder.denominator
        p_next = a * p_cur + p_prev
        q_next = a * q_cur + q_prev
        if q_next > max_denominator:
            break
        p_prev, q_prev, p_cur, q_cur = p_cur, q_cur, p_next, q_next
        fractional = remainder - a
        if fractional == 0:
            break
        remainder = 1 / fractional
    return Fraction(p_cur, q_cur)


def rationalize_behavior(scenario: Scenario, rep: Representation, values,
                         max_denominator: int = 10**6) -> Behavior:
    """Bridge from floating-point behavior vectors to exact geometry queries."""
    entries = tuple(rationalize(float(v), max_denominator) for v in values)
    return Behavior(scenario, rep, entries)
