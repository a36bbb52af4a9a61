"""Cyclic left shift on a finite volume, its powers and its average.

The shift acts by relabeling supports, never through permutation matrices:
a factor at site x moves to site ((x - 1 - j) mod N) + 1 under j
applications.  On elementary tensors this sends
a_1 (x) a_2 (x) ... (x) a_N to a_2 (x) ... (x) a_N (x) a_1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation
from .localops import (
    Block,
    LocalOperator,
    OperatorSum,
    _make_op,
    _permute_site_axes,
    as_volume,
    norm,
    operator_sum,
    zero_sum,
)

__all__ = [
    "gamma_pow",
    "gamma_average",
    "GammaSequenceSpec",
    "gamma_sequence_spec",
    "eval_gamma_sequence",
    "is_gamma_invariant",
    "translate",
]


def translate(a: LocalOperator, shift: int) -> LocalOperator:
    """Plain (non-cyclic) translation of every site by ``shift``."""
    blocks = []
    for b in a.blocks:
        sites = tuple(s + shift for s in b.sites)
        if sites and sites[0] < 1:
            raise ContractViolation(f"translation by {shift} pushes support below site 1")
        blocks.append(Block(sites, b.matrix))
    return _make_op(a.site_dim, a.scalar, blocks)


def _relabel_block(b: Block, j: int, n: int, d: int) -> Block:
    new_sites = [((s - 1 - j) % n) + 1 for s in b.sites]
    order = np.argsort(new_sites)
    sorted_sites = tuple(new_sites[i] for i in order)
    if tuple(order) == tuple(range(len(new_sites))):
        return Block(sorted_sites, b.matrix)
    mat = _permute_site_axes(b.matrix, new_sites, sorted_sites, d)
    return Block(sorted_sites, mat)


def gamma_pow(a, volume, j: int):
    """Apply j cyclic left shifts; pure support relabeling, norm-preserving."""
    n = as_volume(volume).size
    j = int(j) % n
    if isinstance(a, OperatorSum):
        if a.support and a.support[-1] > n:
            raise ContractViolation(f"support {a.support} outside volume of {n} sites")
        return operator_sum(
            [(w, gamma_pow(op, n, j)) for w, op in a.terms], a.site_dim
        )
    if a.support and a.support[-1] > n:
        raise ContractViolation(f"support {a.support} outside volume of {n} sites")
    if j == 0:
        return a
    blocks = [_relabel_block(b, j, n, a.site_dim) for b in a.blocks]
    return _make_op(a.site_dim, a.scalar, blocks)


def gamma_average(a, volume) -> OperatorSum:
    """The averaged shift (1/N) sum_j gamma^j, as an N-fold term list.

    Accepts a :class:`LocalOperator` or an :class:`OperatorSum`; no
    densification happens.
    """
    n = as_volume(volume).size
    if isinstance(a, LocalOperator):
        a = a.as_sum()
    terms = []
    for w, op in a.terms:
        for j in range(n):
            terms.append((w / n, gamma_pow(op, n, j)))
    return operator_sum(terms, a.site_dim)


@dataclass(frozen=True)
class GammaSequenceSpec:
    """Seed of a shift-averaged sequence, normalized to leftmost position.

    ``window`` is the length of the interval {1, ..., window} holding the
    seed's support after normalization; volumes smaller than the window
    evaluate to the zero sum.
    """

    seed: LocalOperator
    window: int


def gamma_sequence_spec(seed: LocalOperator) -> GammaSequenceSpec:
    sup = seed.support
    if not sup:
        raise ContractViolation("gamma-sequence seeds need nonempty support")
    seed = translate(seed, 1 - sup[0])
    return GammaSequenceSpec(seed, seed.support[-1])


def eval_gamma_sequence(spec: GammaSequenceSpec, volume) -> OperatorSum:
    n = as_volume(volume).size
    if n < spec.window:
        return zero_sum(spec.seed.site_dim)
    return gamma_average(spec.seed, n)


def is_gamma_invariant(a, volume, tol: float = 1e-10, method: str = "auto") -> bool:
    """True iff one shift moves the operator by at most ``tol`` in norm."""
    n = as_volume(volume).size
    s = a.as_sum() if isinstance(a, LocalOperator) else a
    diff = gamma_pow(s, n, 1) - s
    return norm(diff, n, method).value <= tol
