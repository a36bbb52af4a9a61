"""Translation-invariant product states and factorized expectations.

Expectations of operator sums are computed term by term, contracting the
one-site density matrix against each block's tensor legs; the full-volume
density matrix is never formed outside test oracles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation
from .localops import (
    Block,
    LocalOperator,
    OperatorSum,
    _check_support_fits,
    as_volume,
)
from .matrices import check_finite
from .shifts import gamma_average, gamma_pow

__all__ = [
    "ProductState",
    "product_state",
    "expectation",
    "average_variance",
    "induced_invariance_residual",
]


@dataclass(frozen=True, eq=False)
class ProductState:
    """One density matrix per site, identical across sites."""

    rho: np.ndarray
    site_dim: int


def product_state(rho, atol: float = 1e-12) -> ProductState:
    """Validate and freeze a one-site density matrix.

    Requires self-adjointness and unit trace within ``atol`` and eigenvalues
    above ``-atol``.
    """
    rho = check_finite(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ContractViolation(f"density matrix must be square, got {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > atol:
        raise ContractViolation("density matrix must be self-adjoint")
    if abs(np.trace(rho) - 1.0) > atol:
        raise ContractViolation(f"density matrix trace is {np.trace(rho):.6g}, expected 1")
    if np.linalg.eigvalsh(rho)[0] < -atol:
        raise ContractViolation("density matrix must be positive semidefinite")
    rho = np.array(rho, dtype=complex)
    rho.flags.writeable = False
    return ProductState(rho, rho.shape[0])


def _block_expectation(blk: Block, rho: np.ndarray, d: int) -> complex:
    # tr((rho^{(x) k}) B) contracted leg by leg: einsum with integer subscripts
    k = len(blk.sites)
    tensor = blk.matrix.reshape((d,) * (2 * k))
    operands = [tensor, list(range(2 * k))]
    for t in range(k):
        operands.extend([rho, [k + t, t]])
    return complex(np.einsum(*operands, []))


def expectation(state: ProductState, s: OperatorSum | LocalOperator, volume) -> complex:
    """State value of a sum, factorized over each term's blocks."""
    if isinstance(s, LocalOperator):
        s = s.as_sum()
    if state.site_dim != s.site_dim:
        raise ContractViolation("state and operator disagree on site dimension")
    n = as_volume(volume).size
    _check_support_fits(s.support, n)
    total = 0j
    for w, op in s.terms:
        val = w * op.scalar
        for blk in op.blocks:
            val *= _block_expectation(blk, state.rho, state.site_dim)
        total += val
    return total


def _check_averaging_seed(seed: LocalOperator, atol: float = 1e-12) -> None:
    if len(seed.support) > 1:
        raise ContractViolation("variance seeds act on at most one site")
    if abs(np.imag(seed.scalar)) > atol:
        raise ContractViolation("variance seeds must be self-adjoint")
    for blk in seed.blocks:
        eff = seed.scalar * blk.matrix
        if np.max(np.abs(eff - eff.conj().T)) > atol:
            raise ContractViolation("variance seeds must be self-adjoint")


def average_variance(state: ProductState, seed: LocalOperator, volume) -> float:
    """Variance of the shift average of a one-site observable.

    Expanded over pairs of shifted copies: only coinciding shifts contribute
    the one-site second moment, so i.i.d. product states give exactly the
    one-site variance divided by N.
    """
    _check_averaging_seed(seed)
    n = as_volume(volume).size
    avg = gamma_average(seed, n)
    second = expectation(state, avg * avg, n)
    first = expectation(state, avg, n)
    var = np.real(second - first**2)
    return float(max(var, 0.0))


def induced_invariance_residual(
    state: ProductState, seed: LocalOperator, volume, j: int
) -> float:
    """|omega(avg(shift^j seed)) - omega(avg(seed))| at one volume.

    Cyclic averaging absorbs shifts, so this vanishes identically at every
    finite volume; the returned residual only measures float noise.
    """
    n = as_volume(volume).size
    shifted = gamma_average(gamma_pow(seed, n, j), n)
    plain = gamma_average(seed, n)
    return float(
        abs(expectation(state, shifted, n) - expectation(state, plain, n))
    )
