"""Dense complex matrix kernels: Kronecker products, adjoints, exact operator norms.

All functions work on plain ``numpy.ndarray`` with ``complex128`` entries and
are pure; matrices returned by constructors are marked read-only.
"""

from __future__ import annotations

from functools import reduce

import numpy as np

from .errors import CapacityError, ContractViolation

# Largest total dimension for which dense matrices are materialized.
# 4096 = 2^12, i.e. twelve qubit sites; a Hermitian eigensolve at this
# size is seconds-scale.
DENSE_DIM_CAP = 4096

_SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
_SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)


def _frozen(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=complex)
    out.flags.writeable = False
    return out


def pauli(kind) -> np.ndarray:
    """Return a standard 2x2 Pauli matrix.

    ``kind`` is 1, 2, 3 or the string ``"identity"`` (``"1"``/``"2"``/``"3"``
    are accepted as strings too).
    """
    if kind in (1, "1"):
        return _frozen(_SIGMA1)
    if kind in (2, "2"):
        return _frozen(_SIGMA2)
    if kind in (3, "3"):
        return _frozen(_SIGMA3)
    if kind in ("identity", "id", 0):
        return _frozen(np.eye(2))
    raise ContractViolation(f"unknown Pauli kind: {kind!r}")


def check_finite(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ContractViolation("matrix entries must be finite (no NaN/Inf)")
    return a


def kron(a: np.ndarray, b: np.ndarray, dim_cap: int = DENSE_DIM_CAP) -> np.ndarray:
    """Kronecker product with the left factor most significant.

    Raises :class:`CapacityError` if the result would exceed ``dim_cap`` rows
    or columns.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if max(rows, cols) > dim_cap:
        raise CapacityError(
            f"kron result would be {rows}x{cols}, above the dense cap {dim_cap}"
        )
    return np.kron(a, b)


def kron_all(mats, dim_cap: int = DENSE_DIM_CAP) -> np.ndarray:
    """Left-fold Kronecker product of a sequence of matrices."""
    mats = list(mats)
    if not mats:
        return np.eye(1, dtype=complex)
    return reduce(lambda x, y: kron(x, y, dim_cap), mats)


def adjoint(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a, dtype=complex).conj().T


def operator_norm_dense(a: np.ndarray, dim_cap: int = DENSE_DIM_CAP) -> float:
    """Exact operator (spectral) norm of a square matrix.

    Computed as sqrt of the largest eigenvalue of ``a* a`` via a Hermitian
    eigensolve, which is cheaper than a full SVD for repeated calls.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ContractViolation(f"operator norm needs a square matrix, got {a.shape}")
    if a.shape[0] > dim_cap:
        raise CapacityError(
            f"dense norm at dimension {a.shape[0]} exceeds cap {dim_cap}; "
            "use the iterative path"
        )
    gram = a.conj().T @ a
    top = np.linalg.eigvalsh(gram)[-1]
    return float(np.sqrt(max(top.real, 0.0)))
