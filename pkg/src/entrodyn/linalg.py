"""Dense complex linear algebra: products, a Hermitian eigensolver, matrix exponentials.

Everything operates on plain complex128 ndarrays. All functions are pure:
arguments are never mutated and results are freshly allocated, so values can
be shared freely between threads. hbar = 1 throughout; time carries units of
inverse energy.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError, DomainError, ShapeError

# Relative Hermiticity tolerance: ||h - h†||_F <= HERMITICITY_RTOL * ||h||_F.
HERMITICITY_RTOL = 1e-10
# Jacobi sweeps stop once the off-diagonal Frobenius norm drops below
# JACOBI_OFF_TOL * ||input||_F.
JACOBI_OFF_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100
# Taylor degree for the scaling-and-squaring exponential.
TAYLOR_DEGREE = 12


class EigenDecomposition(NamedTuple):
    """Spectral factorization h = V diag(w) V† with w ascending and V unitary.

    Column k of ``eigenvectors`` pairs with ``eigenvalues[k]``. Each column is
    rephased so that its largest-magnitude component is real and positive
    (ties broken by lowest index), which makes the output deterministic for a
    fixed input. Inside a degenerate eigenvalue cluster only the spanned
    subspace is meaningful.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(m) -> np.ndarray:
    """Coerce to a fresh 2-D complex128 array with finite entries."""
    a = np.array(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] == 0 or a.shape[1] == 0:
        raise ShapeError(f"expected a nonempty 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError("matrix entries must be finite")
    return a


def _require_square(a: np.ndarray, what: str = "matrix") -> None:
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"{what} must be square, got shape {a.shape}")


def frobenius(m) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(np.asarray(m)))


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.complex128)


def adjoint(m) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(m).conj().T.copy()


def matmul(a, b) -> np.ndarray:
    """Matrix product with an explicit conformability check."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply shapes {a.shape} and {b.shape}")
    return a @ b


def kron(a, b) -> np.ndarray:
    """Kronecker product; block (i, j) of the result is a[i, j] * b."""
    return np.kron(as_matrix(a), as_matrix(b))


def trace(m) -> complex:
    """Sum of diagonal entries of a square matrix."""
    m = as_matrix(m)
    _require_square(m)
    return complex(np.trace(m))


def require_hermitian(m, *, rtol: float = HERMITICITY_RTOL, what: str = "matrix") -> np.ndarray:
    """Validate ||m - m†||_F <= rtol * ||m||_F and return m as a fresh array."""
    m = as_matrix(m)
    _require_square(m, what)
    defect = frobenius(m - m.conj().T)
    if defect > rtol * frobenius(m):
        raise DomainError(
            f"{what} is not Hermitian: ||m - m†||_F = {defect:.3e} "
            f"exceeds {rtol:g} * ||m||_F"
        )
    return m


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diagonal(a))
    return float(np.linalg.norm(off))


def hermitian_eig(h) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Pairs (p, q), p < q, are visited in fixed row-major order; each visit
    annihilates the (p, q) entry with a complex plane rotation. Sweeping
    repeats until the off-diagonal Frobenius norm is at most
    ``JACOBI_OFF_TOL * ||h||_F``, raising ConvergenceError after
    ``JACOBI_MAX_SWEEPS`` sweeps. O(n^3) per sweep; intended for the dense,
    desk-scale matrices this package works with (n <= ~128).
    """
    h = require_hermitian(h, what="eigensolver input")
    n = h.shape[0]
    a = h.copy()
    v = identity(n)
    tol = JACOBI_OFF_TOL * frobenius(h)

    sweeps = 0
    while _offdiag_norm(a) > tol:
        if sweeps >= JACOBI_MAX_SWEEPS:
            raise ConvergenceError(
                f"Jacobi eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                u = apq / r  # phase of the off-diagonal entry
                tau = (a[p, p].real - a[q, q].real) / (2.0 * r)
                # Smaller-magnitude root of t^2 - 2*tau*t - 1 = 0.
                if tau >= 0.0:
                    t = -1.0 / (tau + math.hypot(1.0, tau))
                else:
                    t = 1.0 / (-tau + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c

                rowp = a[p, :].copy()
                rowq = a[q, :].copy()
                a[p, :] = c * rowp - s * u * rowq
                a[q, :] = s * np.conj(u) * rowp + c * rowq
                colp = a[:, p].copy()
                colq = a[:, q].copy()
                a[:, p] = c * colp - s * np.conj(u) * colq
                a[:, q] = s * u * colp + c * colq
                a[p, q] = 0.0
                a[q, p] = 0.0

                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * np.conj(u) * vq
                v[:, q] = s * u * vp + c * vq
        sweeps += 1

    w = np.diagonal(a).real.copy()
    order = np.argsort(w, kind="stable")
    w = w[order]
    v = v[:, order]
    for k in range(n):
        pivot = v[int(np.argmax(np.abs(v[:, k]))), k]
        v[:, k] *= np.conj(pivot) / abs(pivot)
    return EigenDecomposition(w, v)


def expm_hermitian(h, t: float) -> np.ndarray:
    """Unitary exp(-i h t) for Hermitian h, via the eigendecomposition route."""
    w, v = hermitian_eig(h)
    phases = np.exp(-1j * w * float(t))
    return (v * phases) @ v.conj().T


def expm_oracle(a) -> np.ndarray:
    """exp(a) for any square matrix, by scaling and squaring.

    The argument is scaled by 2**-s until its Frobenius norm is at most 0.5,
    exponentiated with a degree-``TAYLOR_DEGREE`` Taylor series, and squared s
    times. Deliberately independent of the eigendecomposition route so the
    two can cross-check each other.
    """
    a = as_matrix(a)
    _require_square(a)
    n = a.shape[0]

    norm = frobenius(a)
    s = 0
    while norm / (2.0**s) > 0.5:
        s += 1
    b = a / (2.0**s)

    term = identity(n)
    total = identity(n)
    for k in range(1, TAYLOR_DEGREE + 1):
        term = term @ b / k
        total = total + term
    for _ in range(s):
        total = total @ total
    return total


def partial_trace(m, dim_a: int, dim_b: int, keep: str = "A") -> np.ndarray:
    """Trace out one factor of a (dim_a * dim_b)-dimensional bipartite operator.

    ``keep="A"`` returns the dim_a x dim_a reduction, ``keep="B"`` the
    dim_b x dim_b one. The trace of the input is preserved.
    """
    m = as_matrix(m)
    _require_square(m)
    if dim_a < 1 or dim_b < 1 or m.shape[0] != dim_a * dim_b:
        raise ShapeError(
            f"matrix of dimension {m.shape[0]} does not factor as {dim_a} x {dim_b}"
        )
    blocks = m.reshape(dim_a, dim_b, dim_a, dim_b)
    selector = str(keep).upper()
    if selector == "A":
        return np.einsum("ikjk->ij", blocks)
    if selector == "B":
        return np.einsum("kikj->ij", blocks)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")
