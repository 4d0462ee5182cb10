"""Harmonic transforms and calculus for time-vertex signals.

A time-vertex signal is an N x T array whose column ``t`` is the graph
signal at step ``t``. Conventions used throughout the package:

* temporal frequencies: ``omega_k = 2 pi k / T`` for ``k = 0 .. T-1``
  (no fftshift); kernels are evaluated at these values mapped to
  ``(-pi, pi]``;
* the DFT is unitary (``fft / sqrt(T)``), the GFT uses the orthonormal
  Laplacian eigenbasis, hence the joint transform is unitary and Parseval
  holds exactly;
* the time axis is periodic everywhere (circulant difference operators).
"""

import numpy as np
import scipy.sparse as sp

from .errors import ImaginaryResidueError, ValidationError

#: Relative imaginary mass above which an inverse transform refuses to
#: return a real signal.
IMAG_TOL = 1e-10


def validate_signal(X):
    """Coerce to a 2-D ndarray and reject non-finite entries."""
    X = np.asarray(X)
    if X.ndim != 2:
        raise ValidationError(f"signal must be 2-D (N x T), got shape {X.shape}")
    if not np.isfinite(X).all():
        raise ValidationError("signal contains NaN or Inf entries")
    return X


def vec(X):
    """Column-stacking vectorization."""
    return np.asarray(X).reshape(-1, order="F")


def unvec(x, n, t):
    """Inverse of :func:`vec`."""
    return np.asarray(x).reshape((n, t), order="F")


def omega_grid(T, centered=True):
    """Angular frequency grid ``2 pi k / T``, ``k = 0 .. T-1``.

    With ``centered=True`` frequencies above ``pi`` are wrapped to
    ``(-pi, pi]``, the convention kernels are evaluated in.
    """
    w = 2 * np.pi * np.arange(T) / T
    if centered:
        w = np.where(w > np.pi + 1e-15, w - 2 * np.pi, w)
    return w


def time_laplacian(T):
    """Circulant second-difference matrix (the time Laplacian)."""
    if T == 1:
        return sp.csr_array((1, 1))
    main = 2.0 * np.ones(T)
    off = -np.ones(T - 1)
    L = sp.diags([off, main, off], [-1, 0, 1], format="lil")
    L[0, T - 1] += -1.0
    L[T - 1, 0] += -1.0
    return sp.csr_array(L)


def time_laplacian_eigenvalues(T):
    """Spectrum ``2 (1 - cos omega_k)`` of the time Laplacian."""
    return 2.0 * (1.0 - np.cos(omega_grid(T, centered=False)))


# ---------------------------------------------------------------------------
# Fourier transforms
# ---------------------------------------------------------------------------

def dft(X):
    """Unitary DFT along the time axis (rows)."""
    X = validate_signal(X)
    return np.fft.fft(X, axis=1) / np.sqrt(X.shape[1])


def idft(S):
    """Inverse of :func:`dft`."""
    S = np.asarray(S)
    return np.fft.ifft(S, axis=1) * np.sqrt(S.shape[1])


def gft(X, eig):
    """Graph Fourier transform: project columns on the Laplacian eigenbasis."""
    X = np.asarray(X)
    if X.shape[0] != eig.n:
        raise ValidationError(
            f"signal has {X.shape[0]} rows but eigensystem has {eig.n}")
    return eig.vectors.T @ X


def igft(S, eig):
    """Inverse of :func:`gft`."""
    S = np.asarray(S)
    if S.shape[0] != eig.n:
        raise ValidationError(
            f"spectrum has {S.shape[0]} rows but eigensystem has {eig.n}")
    return eig.vectors @ S


def jft(X, eig):
    """Joint time-vertex Fourier transform (GFT over vertices, DFT over time).

    The two transforms commute, so the composition order is immaterial;
    Parseval holds since both factors are unitary.
    """
    X = validate_signal(X)
    return np.fft.fft(gft(X, eig), axis=1) / np.sqrt(X.shape[1])


def _ijft_complex(S, eig):
    S = np.asarray(S)
    return igft(np.fft.ifft(S, axis=1) * np.sqrt(S.shape[1]), eig)


def real_if_close(Y, tol=IMAG_TOL, strict=False):
    """Drop a numerically negligible imaginary part.

    With ``strict=True`` a non-negligible imaginary part raises
    :class:`ImaginaryResidueError` instead of being passed through.
    """
    if not np.iscomplexobj(Y):
        return Y
    scale = np.linalg.norm(Y)
    residue = np.linalg.norm(Y.imag)
    if residue <= tol * max(scale, 1e-300):
        return np.ascontiguousarray(Y.real)
    if strict:
        raise ImaginaryResidueError(
            f"imaginary residue {residue:.3e} exceeds {tol:.1e} x |Y|; "
            "the spectrum is not consistent with a real signal")
    return Y


def ijft(S, eig, real=None):
    """Inverse joint Fourier transform.

    ``real=None`` returns a real array when the imaginary residue is
    negligible and a complex one otherwise; ``real=True`` additionally
    raises on non-negligible residue; ``real=False`` always returns the
    complex result.
    """
    Y = _ijft_complex(S, eig)
    if real is False:
        return Y
    return real_if_close(Y, strict=bool(real))


# ---------------------------------------------------------------------------
# Differential operators and variation norms
# ---------------------------------------------------------------------------

def time_diff(X):
    """Periodic first difference along time: ``x_t - x_{t-1}``."""
    X = np.asarray(X)
    return X - np.roll(X, 1, axis=1)


def time_diff_adjoint(V):
    """Adjoint of :func:`time_diff` (so that adjoint(time_diff) = X L_T)."""
    V = np.asarray(V)
    return V - np.roll(V, -1, axis=1)


def graph_incidence(g):
    """Weighted incidence operator B with ``B.T @ B == L``.

    Row ``e`` holds ``sqrt(w_e) (delta_src - delta_dst)`` for the e-th edge
    in the graph's canonical edge order.
    """
    src, dst, w = g.edges()
    m = src.shape[0]
    if m == 0:
        return sp.csr_array((0, g.N))
    rows = np.repeat(np.arange(m), 2)
    cols = np.empty(2 * m, dtype=np.int64)
    cols[0::2], cols[1::2] = src, dst
    vals = np.empty(2 * m)
    root = np.sqrt(w)
    vals[0::2], vals[1::2] = root, -root
    return sp.csr_array(sp.coo_array((vals, (rows, cols)), shape=(m, g.N)))


def joint_laplacian_apply(X, g):
    """Apply the joint (Cartesian-product) Laplacian: ``L_G X + X L_T``.

    Computed matrix-free; equals ``unvec((L_T kron I + I kron L_G) vec(X))``.
    """
    X = np.asarray(X)
    time_part = 2.0 * X - np.roll(X, 1, axis=1) - np.roll(X, -1, axis=1)
    return g.L @ X + time_part


def joint_gradient(X, g):
    """Graph and temporal first differences of a time-vertex signal.

    Returns ``(graph_part, time_part)`` where ``graph_part`` has one row per
    edge with entries ``sqrt(w)(x_src - x_dst)`` and ``time_part`` is the
    periodic difference along time. The squared Frobenius norms of the two
    parts sum to the joint Laplacian quadratic form.
    """
    X = np.asarray(X)
    return graph_incidence(g) @ X, time_diff(X)


def variation_norm(X, g, p=2, q=2, w_graph=1.0, w_time=1.0):
    """Mixed variation ``w_G ||grad_G X||_p^p + w_T ||diff_T X||_q^q``.

    ``p = q = 2`` with unit weights is the joint Laplacian quadratic form;
    ``p = q = 1`` is the joint total-variation norm.
    """
    if p not in (1, 2) or q not in (1, 2):
        raise ValidationError("variation norm orders must be 1 or 2")
    if w_graph < 0 or w_time < 0:
        raise ValidationError("variation norm weights must be nonnegative")
    gpart, tpart = joint_gradient(X, g)
    g_term = np.abs(gpart).sum() if p == 1 else (gpart ** 2).sum()
    t_term = np.abs(tpart).sum() if q == 1 else (tpart ** 2).sum()
    return float(w_graph * g_term + w_time * t_term)
