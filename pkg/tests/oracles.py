"""Independent brute-force reference implementations used by the tests.

Everything here is built from dense matrices and direct summation only,
deliberately avoiding the library's own fast paths so the two sides of
each comparison stay independent.
"""

import numpy as np


def dft_matrix(T):
    """Unitary DFT matrix F with dft(X) == X @ F (0-based convention)."""
    t = np.arange(T)
    return np.exp(-2j * np.pi * np.outer(t, t) / T) / np.sqrt(T)


def dense_jft(X, U, T):
    return U.T @ np.asarray(X) @ dft_matrix(T)


def dense_ijft(S, U, T):
    return U @ np.asarray(S) @ np.conj(dft_matrix(T))


def dense_time_laplacian(T):
    L = np.zeros((T, T))
    for t in range(T):
        L[t, t] = 2.0
        L[(t - 1) % T, t] -= 1.0
        L[(t + 1) % T, t] -= 1.0
    return L


def dense_joint_laplacian(Lg, T):
    """Kronecker-sum operator acting on column-stacked signals."""
    n = Lg.shape[0]
    return (np.kron(dense_time_laplacian(T), np.eye(n))
            + np.kron(np.eye(T), Lg))


def quadratic_form(X, g):
    """sum over edges of w (x_i - x_j)^2, accumulated per column."""
    src, dst, w = g.edges()
    X = np.asarray(X)
    total = 0.0
    for i, j, wij in zip(src, dst, w):
        total += wij * ((X[i] - X[j]) ** 2).sum()
    return total


def dense_joint_filter(X, kernel, U, lambdas, T):
    """Joint filtering through explicit dense transform matrices."""
    from tvgsp.transforms import omega_grid
    H = np.empty((lambdas.size, T), dtype=complex)
    w = omega_grid(T)
    for l, lam in enumerate(lambdas):
        for k in range(T):
            H[l, k] = kernel(np.asarray(lam), np.asarray(w[k]))
    S = dense_jft(X, U, T)
    return dense_ijft(H * S, U, T)


def dense_time_filter_matrix(h_omega_values):
    """Matrix applying a temporal spectral multiplier from the right."""
    T = len(h_omega_values)
    F = dft_matrix(T)
    return F @ np.diag(h_omega_values) @ np.conj(F)


def direct_wave_sum(lam, omega, s, T):
    """Direct summation of the wave kernel DFT (the closed-form oracle)."""
    tau = np.arccos(1.0 - s * lam / 2.0)
    t = np.arange(T)
    return np.sum(np.cos(t * tau) * np.exp(-1j * omega * t))


def stvft_double_sum(X_hat, U, lambdas, kernel, z_lambda, z_omega, T):
    """Brute-force analysis coefficients

    C(m, tau) = 1/sqrt(T) sum_{l,k} h(lambda_l - zl, omega_k - zw)
                X_hat(l, k) u_l(m) e^{j omega_k tau}
    """
    from tvgsp.transforms import omega_grid
    n = U.shape[0]
    w = omega_grid(T)
    C = np.zeros((n, T), dtype=complex)
    for m in range(n):
        for tau in range(T):
            acc = 0.0 + 0.0j
            for l in range(n):
                for k in range(T):
                    h = kernel(np.asarray(lambdas[l] - z_lambda),
                               np.asarray(w[k] - z_omega))
                    acc += (complex(h) * X_hat[l, k] * U[m, l]
                            * np.exp(1j * 2 * np.pi * k * tau / T))
            C[m, tau] = acc / np.sqrt(T)
    return C


def tikhonov_normal_equations(Y, Lg, tau1, tau2):
    """Dense minimizer of the joint Tikhonov objective."""
    n, T = Y.shape
    A = (np.eye(n * T)
         + tau1 * np.kron(np.eye(T), Lg)
         + tau2 * np.kron(dense_time_laplacian(T), np.eye(n)))
    x = np.linalg.solve(A, Y.reshape(-1, order="F"))
    return x.reshape(n, T, order="F")


def masked_quadratic_solve(Y, M, Lg, gamma1, gamma2):
    """Dense minimizer of ||M o X - Y||^2 + g1 x' (I kron L) x
    + g2 x' (L_T kron I) x (the inpainting problem with p = q = 2)."""
    n, T = Y.shape
    m = M.reshape(-1, order="F")
    A = (np.diag(m)
         + gamma1 * np.kron(np.eye(T), Lg)
         + gamma2 * np.kron(dense_time_laplacian(T), np.eye(n)))
    rhs = (M * Y).reshape(-1, order="F")
    x = np.linalg.solve(A, rhs)
    return x.reshape(n, T, order="F")


def masked_quadratic_objective(X, Y, M, g, gamma1, gamma2):
    from tvgsp.transforms import joint_gradient
    gpart, tpart = joint_gradient(X, g)
    r = M * X - M * Y
    return ((r * r).sum() + gamma1 * (gpart ** 2).sum()
            + gamma2 * (tpart ** 2).sum())
