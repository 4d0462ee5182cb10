"""Overcomplete time-vertex dictionaries and frame machinery.

A :class:`FilterBank` is a finite family of joint kernels ``{h_z}`` over a
scale/shift lattice. Analysis coefficients are obtained by joint filtering
(``C_z = h_z(L_G, L_T) X``), synthesis is the adjoint, and the canonical
dual bank inverts a frame in a single synthesis pass. Coefficients are
stored as a complex ``(|Z|, N_lattice, T_lattice)`` array.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import NotAFrameError, ValidationError
from .kernels import JointKernel, grid_eval
from .filtering import _cheb_apply, fit_chebyshev, filter_exact, filter_ffc
from .transforms import (jft, ijft, omega_grid, real_if_close,
                         validate_signal)

#: Default graph Chebyshev order for eigendecomposition-free analysis.
DEFAULT_ORDER = 50


@dataclass
class FilterBank:
    """Indexed family of joint kernels over a scale/shift lattice.

    ``lattice[z]`` records the ``(z_lambda, z_omega)`` pair that produced
    ``kernels[z]``. ``time_lattice``/``vertex_lattice`` are ``None`` for
    full sampling; frame bounds are only certified by Theorem-style grid
    minima when both lattices are full.
    """

    kernels: list
    lattice: list
    kind: str = "custom"
    mother: JointKernel = None
    T: int = 0
    vertex_lattice: np.ndarray = None
    time_lattice: np.ndarray = None
    meta: dict = field(default_factory=dict)

    @property
    def size(self):
        return len(self.kernels)

    @property
    def subsampled(self):
        return self.time_lattice is not None or self.vertex_lattice is not None

    @property
    def bounds_certified(self):
        return not self.subsampled

    def frame_bounds(self, eig):
        return frame_bounds(self, eig)


def bank_response_energy(bank, lambdas):
    """``sum_z |h_z(lambda_l, omega_k)|^2`` on the joint grid."""
    E = np.zeros((np.asarray(lambdas).size, bank.T))
    for kernel in bank.kernels:
        E += np.abs(grid_eval(kernel, lambdas, bank.T)) ** 2
    return E


def frame_bounds(bank, eig):
    """Frame bounds ``(A, B)``: min/max of the summed squared responses
    over the joint frequency grid. Certified only for full lattices
    (check ``bank.bounds_certified``)."""
    E = bank_response_energy(bank, eig.values)
    return float(E.min()), float(E.max())


def localize(kernel, m, tau, g, T, eig=None, order=DEFAULT_ORDER):
    """Joint localization: filter a Kronecker delta at vertex ``m``,
    time ``tau``. The atom-generation primitive of every dictionary."""
    if not 0 <= m < g.N:
        raise ValidationError(f"vertex index {m} out of range [0, {g.N})")
    if not 0 <= tau < T:
        raise ValidationError(f"time index {tau} out of range [0, {T})")
    delta = np.zeros((g.N, T))
    delta[m, tau] = 1.0
    if eig is not None:
        return filter_exact(delta, kernel, eig)
    return filter_ffc(delta, kernel, g, order)


# ---------------------------------------------------------------------------
# Dictionary constructions
# ---------------------------------------------------------------------------

def itersine(x):
    """Itersine window atom: ``sin(pi/2 cos^2(pi x))`` on ``[-1/2, 1/2]``.

    Shifted copies at half-support spacing satisfy the partition of squares
    ``g(x)^2 + g(x - 1/2)^2 = 1``.
    """
    x = np.asarray(x, dtype=float)
    vals = np.sin(0.5 * np.pi * np.cos(np.pi * x) ** 2)
    return np.where(np.abs(x) <= 0.5, vals, 0.0)


def itersine_graph_design(lmax, num_translates):
    """Uniform itersine design on ``[0, lmax]``.

    Returns the base atom ``h_G`` and the shift list; the translated
    squares sum to one across the whole interval, giving a well
    conditioned STVFT graph axis.
    """
    if num_translates < 2:
        raise ValidationError("itersine design needs at least two translates")
    if lmax <= 0:
        raise ValidationError("itersine design needs a positive lmax")
    delta = lmax / (num_translates - 1)
    shifts = [i * delta for i in range(num_translates)]
    return (lambda lam: itersine(lam / (2.0 * delta))), shifts


def time_window(shape, length):
    """Named time-domain analysis windows."""
    if length < 1:
        raise ValidationError("window length must be positive")
    if shape == "rectangular":
        return np.ones(length)
    if shape == "hann":
        return np.sin(np.pi * (np.arange(length) + 0.5) / length) ** 2
    raise ValidationError(f"unknown time window '{shape}'")


def time_window_kernel(window):
    """Spectral kernel of a time-domain window (2 pi periodic, entire).

    The window is centered so localized atoms cover ``[tau - l/2, tau + l/2)``.
    """
    w = np.asarray(window, dtype=float).ravel()
    offsets = np.arange(w.size) - w.size // 2

    def h_T(omega):
        om = np.asarray(omega, dtype=float)
        return np.exp(-1j * om[..., None] * offsets) @ w

    return h_T


def make_stvft(window_graph, window_time, z_lambda, time_hop, g, T):
    """Short time-vertex Fourier dictionary (spectral-shift atoms).

    ``window_graph`` is the graph-axis atom ``h_G(lambda)`` (see
    :func:`itersine_graph_design`); ``window_time`` a time-domain window of
    length ``l``. The temporal modulation lattice has exactly ``l`` shifts
    ``2 pi i / l`` and the time positions are subsampled with ``time_hop``
    (window length over redundancy). The vertex lattice stays full.
    """
    w = np.asarray(window_time, dtype=float).ravel()
    if not 1 <= w.size <= T:
        raise ValidationError(
            f"time window length {w.size} must lie in [1, T={T}]")
    if time_hop < 1 or T % time_hop != 0:
        raise ValidationError(f"time hop {time_hop} must divide T={T}")
    z_lambda = [float(z) for z in z_lambda]
    if not z_lambda:
        raise ValidationError("empty graph shift list")
    z_omega = 2.0 * np.pi * np.arange(w.size) / w.size
    mother = JointKernel(h1=window_graph, h2=time_window_kernel(w),
                         name="stvft_mother")
    kernels, lattice = [], []
    for zl in z_lambda:
        for zw in z_omega:
            kernels.append(mother.shifted(zl, zw))
            lattice.append((zl, float(zw)))
    time_lattice = None if time_hop == 1 else np.arange(0, T, time_hop)
    return FilterBank(
        kernels=kernels, lattice=lattice, kind="stvft", mother=mother, T=T,
        time_lattice=time_lattice,
        meta={"window_time": w, "z_lambda": z_lambda,
              "z_omega": z_omega, "time_hop": int(time_hop)})


def make_stvwt(mother, scales_lambda, scales_omega, g, T,
               dc_kernel=None, check_admissibility=True):
    """Spectral time-vertex wavelet dictionary (spectral-dilation atoms).

    The usual admissibility requirement is a vanishing DC response
    ``h(0, 0) = 0``; a mother violating it needs either an explicit
    scaling-function ``dc_kernel`` or ``check_admissibility=False``
    (the damped-wave mother is used this way). Lattices are full.
    """
    scales_lambda = [float(z) for z in scales_lambda]
    scales_omega = [float(z) for z in scales_omega]
    if not scales_lambda or not scales_omega:
        raise ValidationError("empty scale list")
    if check_admissibility and dc_kernel is None:
        dc = complex(np.asarray(mother(0.0, 0.0)))
        if abs(dc) > 1e-12:
            raise ValidationError(
                f"mother kernel has nonzero DC response h(0,0) = {dc:.3e}; "
                "supply a dc_kernel or pass check_admissibility=False")
    kernels, lattice = [], []
    for zl in scales_lambda:
        for zw in scales_omega:
            kernels.append(mother.scaled(zl, zw))
            lattice.append((zl, zw))
    if dc_kernel is not None:
        kernels.append(dc_kernel)
        lattice.append((0.0, 0.0))
    return FilterBank(kernels=kernels, lattice=lattice, kind="stvwt",
                      mother=mother, T=T,
                      meta={"scales_lambda": scales_lambda,
                            "scales_omega": scales_omega,
                            "has_dc_kernel": dc_kernel is not None})


# ---------------------------------------------------------------------------
# Analysis / synthesis
# ---------------------------------------------------------------------------

def _materialize(values, size):
    out = np.empty(size, dtype=complex)
    out[...] = values
    return out


def bank_grid(bank, eig):
    """Stacked joint-grid responses of all bank kernels: ``(|Z|, N, T)``."""
    return np.stack([grid_eval(kernel, eig.values, bank.T)
                     for kernel in bank.kernels])


def _jft_stack(C, eig):
    # joint transform of a (Z, N, T) stack in two vectorized calls
    return (np.fft.fft(np.matmul(eig.vectors.T, C), axis=-1)
            / np.sqrt(C.shape[-1]))


def _ijft_stack(S, eig):
    return (np.matmul(eig.vectors, np.fft.ifft(S, axis=-1))
            * np.sqrt(S.shape[-1]))


def _analyze_stvft(bank, X, g, eig, order):
    """Shared-graph-filtering STVFT analysis.

    Filters once per graph shift, then runs the temporal (windowed DFT)
    axis per modulation; with a subsampled time lattice only the lattice
    columns are kept. Equivalent to per-kernel joint filtering.
    """
    T = bank.T
    w_grid = omega_grid(T)
    mother = bank.mother
    tsel = (np.arange(T) if bank.time_lattice is None
            else np.asarray(bank.time_lattice))
    out = np.empty((bank.size, g.N, tsel.size), dtype=complex)
    z = 0
    for zl in bank.meta["z_lambda"]:
        hg = (lambda lam, _zl=zl: mother.h1(lam - _zl))
        if eig is not None:
            gains = _materialize(hg(eig.values), g.N)
            Yg = eig.vectors @ (gains[:, None] * (eig.vectors.T @ X))
        elif g.lmax == 0:
            Yg = complex(np.asarray(hg(np.zeros(1))).ravel()[0]) * X
        else:
            coeffs = fit_chebyshev(hg, order, (0.0, g.lmax))
            Yg = _cheb_apply(lambda V: g.L @ V, coeffs, X, (0.0, g.lmax))
        Fg = np.fft.fft(Yg, axis=1)
        for zw in bank.meta["z_omega"]:
            hw = _materialize(mother.h2(w_grid - zw), T)
            C = np.fft.ifft(Fg * hw[None, :], axis=1)
            out[z] = C[:, tsel]
            z += 1
    return out


def analyze(bank, X, g, eig=None, order=DEFAULT_ORDER):
    """Analysis operator: coefficients of ``X`` against every bank atom.

    With full lattices this is one joint filtering pass per kernel
    (exact when ``eig`` is given, Chebyshev/FFC of the given order
    otherwise). Subsampled time lattices are supported for STVFT banks
    via graph-filter-then-windowed-DFT.
    """
    X = validate_signal(X)
    if X.shape != (g.N, bank.T):
        raise ValidationError(
            f"signal shape {X.shape} does not match (N={g.N}, T={bank.T})")
    if bank.kind == "stvft":
        return _analyze_stvft(bank, X, g, eig, order)
    if bank.subsampled:
        raise ValidationError(
            "subsampled analysis is only supported for STVFT banks")
    if eig is not None:
        S = jft(X, eig)
        return _ijft_stack(bank_grid(bank, eig) * S[None, :, :], eig)
    out = np.empty((bank.size, g.N, bank.T), dtype=complex)
    for z, kernel in enumerate(bank.kernels):
        out[z] = filter_ffc(X, kernel, g, order)
    return out


def synthesize(bank, C, g, eig=None, order=DEFAULT_ORDER):
    """Synthesis operator (adjoint of :func:`analyze`):
    ``Y = sum_z conj(h_z)(L_G, L_T) C_z``. Full lattices only."""
    if bank.subsampled:
        raise ValidationError(
            "synthesis from subsampled lattices is not supported")
    C = np.asarray(C)
    if C.shape != (bank.size, g.N, bank.T):
        raise ValidationError(
            f"coefficients shape {C.shape} does not match "
            f"({bank.size}, {g.N}, {bank.T})")
    if eig is not None:
        S = (np.conj(bank_grid(bank, eig)) * _jft_stack(C, eig)).sum(axis=0)
        return ijft(S, eig)
    Y = np.zeros((g.N, bank.T), dtype=complex)
    for z, kernel in enumerate(bank.kernels):
        Y += filter_ffc(C[z], kernel.conj(), g, order)
    return real_if_close(Y)


def _denominator(kernels):
    def D(lam, omega):
        total = 0.0
        for kernel in kernels:
            total = total + np.abs(np.asarray(kernel(lam, omega))) ** 2
        return total
    return D


def canonical_dual(bank, eig, tol=1e-12):
    """Canonical dual bank ``h_z / sum_z' |h_z'|^2``.

    One synthesis pass with the dual inverts the analysis operator:
    ``synthesize(dual, analyze(bank, X)) == X``. Raises
    :class:`NotAFrameError` when the lower frame bound vanishes.
    """
    E = bank_response_energy(bank, eig.values)
    A, B = float(E.min()), float(E.max())
    if A <= tol * max(B, 1.0):
        l, k = np.unravel_index(int(np.argmin(E)), E.shape)
        raise NotAFrameError(
            f"lower frame bound {A:.3e} vanishes at grid point "
            f"(l={l}, k={k}) (0-based); the bank is not a frame")
    kernels = list(bank.kernels)
    den = _denominator(kernels)

    def make_dual(kz):
        return lambda lam, omega: np.asarray(kz(lam, omega)) / den(lam, omega)

    dual_kernels = [JointKernel(fn=make_dual(kz), name=f"dual({kz.name})")
                    for kz in kernels]
    return FilterBank(kernels=dual_kernels, lattice=list(bank.lattice),
                      kind="custom", mother=None, T=bank.T,
                      vertex_lattice=bank.vertex_lattice,
                      time_lattice=bank.time_lattice,
                      meta={"dual_of": bank.kind})


def normalize_tight(bank):
    """Scale kernels by ``1 / sqrt(sum_z |h_z|^2)`` pointwise, producing a
    tight bank with frame bounds A = B = 1. The bank's summed energy must
    be positive wherever kernels are evaluated."""
    kernels = list(bank.kernels)
    den = _denominator(kernels)

    def make(kz):
        return lambda lam, omega: (np.asarray(kz(lam, omega))
                                   / np.sqrt(den(lam, omega)))

    tight = [JointKernel(fn=make(kz), name=f"tight({kz.name})")
             for kz in kernels]
    return FilterBank(kernels=tight, lattice=list(bank.lattice),
                      kind="custom", mother=None, T=bank.T,
                      vertex_lattice=bank.vertex_lattice,
                      time_lattice=bank.time_lattice,
                      meta={"tight_of": bank.kind})
