"""Volume-indexed observable sequences.

A sequence is an evaluation rule N -> OperatorSum on the volume {1,...,N},
not a stored array; schedules pick which volumes to look at.  The built-in
kinds cover embedded local observables, observables translated to the moving
edge of the volume, shift averages of a fixed seed, sitewise product
operators (uniform, parity-alternating, block-alternating), the half-chain
filling pattern, and pointwise *-algebra combinations of all of these.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ContractViolation
from .localops import (
    LocalOperator,
    NormResult,
    OperatorSum,
    from_site_factors,
    identity_op,
    norm,
    sum_product,
    zero_sum,
)
from .matrices import check_finite, operator_norm_dense
from .shifts import GammaSequenceSpec, eval_gamma_sequence, gamma_sequence_spec

__all__ = [
    "ObservableSequence",
    "LocalEmbedSeq",
    "TranslatedToInfinity",
    "GammaSeq",
    "UniformProduct",
    "ParityProduct",
    "BlockProduct",
    "HalfChain",
    "SeqSum",
    "SeqProduct",
    "SeqAdjoint",
    "SeqScale",
    "make_block_partition",
    "VolumeSchedule",
    "as_schedule",
    "seq_norm_trace",
]


class ObservableSequence:
    """Base class; subclasses implement ``eval(n) -> OperatorSum``."""

    site_dim: int = 2

    def eval(self, n: int) -> OperatorSum:
        raise NotImplementedError

    def describe(self) -> str:
        return type(self).__name__

    def __add__(self, other: "ObservableSequence") -> "ObservableSequence":
        return SeqSum(self, other)

    def __mul__(self, other: "ObservableSequence") -> "ObservableSequence":
        return SeqProduct(self, other)

    def adjoint(self) -> "ObservableSequence":
        return SeqAdjoint(self)

    def scale(self, factor) -> "ObservableSequence":
        return SeqScale(factor, self)


def _check_volume(n: int) -> int:
    n = int(n)
    if n < 1:
        raise ContractViolation(f"volumes have at least one site, got {n}")
    return n


def _bounded_site_op(mat, d) -> np.ndarray:
    mat = check_finite(mat)
    if mat.shape != (d, d):
        raise ContractViolation(f"site operators must be {d}x{d}, got {mat.shape}")
    if operator_norm_dense(mat) > 1.0 + 1e-12:
        raise ContractViolation(
            "product-sequence site operators need norm <= 1 to stay uniformly bounded"
        )
    return mat


@dataclass
class LocalEmbedSeq(ObservableSequence):
    """A fixed local operator, present once the volume contains its support."""

    seed: LocalOperator

    def __post_init__(self):
        self.site_dim = self.seed.site_dim

    def eval(self, n: int) -> OperatorSum:
        n = _check_volume(n)
        sup = self.seed.support
        if sup and sup[-1] > n:
            return zero_sum(self.site_dim)
        return self.seed.as_sum()

    def describe(self) -> str:
        return f"local@{','.join(map(str, self.seed.support)) or 'scalar'}"


@dataclass
class TranslatedToInfinity(ObservableSequence):
    """A single-site operator placed at a volume-dependent site.

    The default rule puts it at the rightmost site, the simplest choice that
    walks off to infinity with the volume.
    """

    site_op: np.ndarray
    site_rule: Callable[[int], int] | None = None
    site_dim: int = 2

    def __post_init__(self):
        self.site_op = check_finite(self.site_op)
        if self.site_op.shape != (self.site_dim,) * 2:
            raise ContractViolation("translated sequences take one single-site operator")

    def site_at(self, n: int) -> int:
        x = n if self.site_rule is None else int(self.site_rule(n))
        if not 1 <= x <= n:
            raise ContractViolation(f"site rule gave {x}, outside volume of {n} sites")
        return x

    def eval(self, n: int) -> OperatorSum:
        n = _check_volume(n)
        return from_site_factors({self.site_at(n): self.site_op}, self.site_dim).as_sum()

    def describe(self) -> str:
        return "translated"


@dataclass
class GammaSeq(ObservableSequence):
    """Shift average of a fixed seed over each volume; zero below the window."""

    spec: GammaSequenceSpec

    def __post_init__(self):
        self.site_dim = self.spec.seed.site_dim

    @classmethod
    def from_seed(cls, seed: LocalOperator) -> "GammaSeq":
        return cls(gamma_sequence_spec(seed))

    def eval(self, n: int) -> OperatorSum:
        return eval_gamma_sequence(self.spec, _check_volume(n))

    def describe(self) -> str:
        return f"gamma(window={self.spec.window})"


@dataclass
class UniformProduct(ObservableSequence):
    """The same single-site factor on every site of the volume."""

    site_op: np.ndarray
    site_dim: int = 2

    def __post_init__(self):
        self.site_op = _bounded_site_op(self.site_op, self.site_dim)

    def eval(self, n: int) -> OperatorSum:
        n = _check_volume(n)
        return from_site_factors(
            {x: self.site_op for x in range(1, n + 1)}, self.site_dim
        ).as_sum()

    def describe(self) -> str:
        return "uniform-product"


@dataclass
class ParityProduct(ObservableSequence):
    """Sitewise product alternating by site parity; site 1 counts as odd."""

    odd_op: np.ndarray
    even_op: np.ndarray
    site_dim: int = 2

    def __post_init__(self):
        self.odd_op = _bounded_site_op(self.odd_op, self.site_dim)
        self.even_op = _bounded_site_op(self.even_op, self.site_dim)

    def eval(self, n: int) -> OperatorSum:
        n = _check_volume(n)
        factors = {
            x: (self.odd_op if x % 2 == 1 else self.even_op) for x in range(1, n + 1)
        }
        return from_site_factors(factors, self.site_dim).as_sum()

    def describe(self) -> str:
        return "parity-product"


def make_block_partition(rule: Callable[[int], int]) -> Callable[[int], int]:
    """Turn a block-length rule n -> B_n into a total map site -> block index.

    Block n covers sites (sum_{k<n} B_k, sum_{k<=n} B_k].  Lengths must be
    positive and strictly increasing; violations raise as soon as the
    offending block is materialized.
    """
    boundaries = [0]
    lengths: list[int] = []

    def block_of(site: int) -> int:
        site = int(site)
        if site < 1:
            raise ContractViolation(f"sites are >= 1, got {site}")
        while boundaries[-1] < site:
            n = len(lengths)
            b = int(rule(n))
            if b <= 0 or (lengths and b <= lengths[-1]):
                raise ContractViolation(
                    f"block lengths must be strictly increasing positive integers; "
                    f"B_{n} = {b} after {lengths[-1] if lengths else 'start'}"
                )
            lengths.append(b)
            boundaries.append(boundaries[-1] + b)
        return bisect.bisect_left(boundaries, site) - 1

    return block_of


def default_block_lengths(n: int) -> int:
    """Smallest strictly increasing rule: B_n = n + 1."""
    return n + 1


@dataclass
class BlockProduct(ObservableSequence):
    """Sitewise product alternating between blocks of strictly increasing length.

    Sites in even-indexed blocks carry ``even_op``, odd-indexed blocks carry
    ``odd_op``.
    """

    even_op: np.ndarray
    odd_op: np.ndarray
    block_lengths: Callable[[int], int] = field(default=default_block_lengths)
    site_dim: int = 2

    def __post_init__(self):
        self.even_op = _bounded_site_op(self.even_op, self.site_dim)
        self.odd_op = _bounded_site_op(self.odd_op, self.site_dim)
        self._block_of = make_block_partition(self.block_lengths)

    def eval(self, n: int) -> OperatorSum:
        n = _check_volume(n)
        factors = {
            x: (self.even_op if self._block_of(x) % 2 == 0 else self.odd_op)
            for x in range(1, n + 1)
        }
        return from_site_factors(factors, self.site_dim).as_sum()

    def describe(self) -> str:
        return "block-product"


@dataclass
class HalfChain(ObservableSequence):
    """Identity on the left ceil(N/2) sites, a fixed factor on the rest.

    Requires ``norm(site_op) <= 1`` so the sequence stays uniformly bounded.
    """

    site_op: np.ndarray
    site_dim: int = 2

    def __post_init__(self):
        self.site_op = _bounded_site_op(self.site_op, self.site_dim)

    def eval(self, n: int) -> OperatorSum:
        n = _check_volume(n)
        first = n - n // 2 + 1
        if first > n:
            return identity_op(self.site_dim).as_sum()
        return from_site_factors(
            {x: self.site_op for x in range(first, n + 1)}, self.site_dim
        ).as_sum()

    def describe(self) -> str:
        return "half-chain"


@dataclass
class SeqSum(ObservableSequence):
    left: ObservableSequence
    right: ObservableSequence

    def __post_init__(self):
        self.site_dim = self.left.site_dim

    def eval(self, n: int) -> OperatorSum:
        return self.left.eval(n) + self.right.eval(n)

    def describe(self) -> str:
        return f"sum({self.left.describe()},{self.right.describe()})"


@dataclass
class SeqProduct(ObservableSequence):
    left: ObservableSequence
    right: ObservableSequence

    def __post_init__(self):
        self.site_dim = self.left.site_dim

    def eval(self, n: int) -> OperatorSum:
        return sum_product(self.left.eval(n), self.right.eval(n))

    def describe(self) -> str:
        return f"product({self.left.describe()},{self.right.describe()})"


@dataclass
class SeqAdjoint(ObservableSequence):
    inner: ObservableSequence

    def __post_init__(self):
        self.site_dim = self.inner.site_dim

    def eval(self, n: int) -> OperatorSum:
        return self.inner.eval(n).adjoint()

    def describe(self) -> str:
        return f"adjoint({self.inner.describe()})"


@dataclass
class SeqScale(ObservableSequence):
    """Scale by a constant, or by a per-volume factor such as 1/N."""

    factor: complex | Callable[[int], complex]
    inner: ObservableSequence

    def __post_init__(self):
        self.site_dim = self.inner.site_dim

    def eval(self, n: int) -> OperatorSum:
        c = self.factor(n) if callable(self.factor) else self.factor
        return self.inner.eval(n).scale(complex(c))

    def describe(self) -> str:
        tag = "fn" if callable(self.factor) else str(self.factor)
        return f"scale({tag},{self.inner.describe()})"


@dataclass(frozen=True)
class VolumeSchedule:
    """Strictly increasing volumes standing in for the growth to infinity."""

    points: tuple[int, ...]

    def __post_init__(self):
        pts = self.points
        if not pts:
            raise ContractViolation("schedules need at least one point")
        if pts[0] < 1 or any(a >= b for a, b in zip(pts, pts[1:])):
            raise ContractViolation(
                f"schedule points must be strictly increasing positive integers, got {pts}"
            )


def as_schedule(points) -> VolumeSchedule:
    if isinstance(points, VolumeSchedule):
        return points
    return VolumeSchedule(tuple(int(p) for p in points))


def seq_norm_trace(
    seq: ObservableSequence,
    schedule,
    method: str = "auto",
    **norm_kwargs,
) -> list[tuple[int, NormResult]]:
    """Per-volume norms of a sequence along a schedule.

    Points where the iterative solver fails to converge are reported with
    their flag rather than aborting the trace.
    """
    schedule = as_schedule(schedule)
    return [(n, norm(seq.eval(n), n, method, **norm_kwargs)) for n in schedule.points]
