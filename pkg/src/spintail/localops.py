"""Support-aware operators on finite chain volumes.

An operator here is a complex scalar times a tensor product of dense blocks
acting on disjoint finite sets of sites; identities are implicit everywhere
else.  A single block is the ordinary (support, dense matrix) local operator;
per-site blocks encode long product operators without ever materializing the
full-volume matrix.  Sums of such operators are kept as term lists.

Basis convention (bit-exact, relied on by tests and serialized data): site 1
is the most significant tensor factor, so a basis state with digit ``j_x`` at
site ``x`` of a volume of ``N`` sites has index ``sum_x j_x * d**(N - x)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import CapacityError, ContractViolation, EmbeddingError
from .matrices import DENSE_DIM_CAP, adjoint, check_finite, operator_norm_dense

__all__ = [
    "Volume",
    "Block",
    "LocalOperator",
    "OperatorSum",
    "StateVector",
    "NormResult",
    "local_operator",
    "from_site_factors",
    "identity_op",
    "zero_op",
    "scalar_op",
    "pauli_at",
    "operator_sum",
    "zero_sum",
    "embed",
    "product",
    "commutator",
    "sum_commutator",
    "sum_product",
    "reduce_support",
    "sum_apply",
    "norm",
    "dense_matrix",
    "state_vector",
]

# Iterative norms hold two state vectors of this many amplitudes at most.
ITERATIVE_STATE_CAP = 2**24


@dataclass(frozen=True)
class Volume:
    """The chain segment {1, ..., size}."""

    size: int

    def __post_init__(self):
        if not isinstance(self.size, int) or self.size < 1:
            raise ContractViolation(f"volume size must be a positive integer, got {self.size!r}")

    @property
    def sites(self) -> range:
        return range(1, self.size + 1)


def as_volume(v) -> Volume:
    return v if isinstance(v, Volume) else Volume(int(v))


@dataclass(frozen=True, eq=False)
class Block:
    """Dense matrix acting on an ascending tuple of sites."""

    sites: tuple[int, ...]
    matrix: np.ndarray


def _frozen(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=complex)
    out.flags.writeable = False
    return out


def _check_block(sites, matrix, d) -> Block:
    sites = tuple(int(s) for s in sites)
    if not sites:
        raise ContractViolation("blocks need at least one site; use the scalar field")
    if any(s < 1 for s in sites) or any(a >= b for a, b in zip(sites, sites[1:])):
        raise ContractViolation(f"block sites must be strictly increasing and >= 1, got {sites}")
    matrix = check_finite(matrix)
    dim = d ** len(sites)
    if matrix.shape != (dim, dim):
        raise ContractViolation(
            f"block on {len(sites)} sites of local dimension {d} needs shape "
            f"({dim}, {dim}), got {matrix.shape}"
        )
    return Block(sites, _frozen(matrix))


@dataclass(frozen=True, eq=False)
class LocalOperator:
    """``scalar *`` tensor product of disjoint-support blocks (identity elsewhere)."""

    site_dim: int
    scalar: complex
    blocks: tuple[Block, ...]

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(s for b in self.blocks for s in b.sites))

    @property
    def is_zero(self) -> bool:
        return self.scalar == 0

    @property
    def is_scalar(self) -> bool:
        return not self.blocks

    def adjoint(self) -> LocalOperator:
        return _make_op(
            self.site_dim,
            np.conj(self.scalar),
            [Block(b.sites, adjoint(b.matrix)) for b in self.blocks],
        )

    def scale(self, c: complex) -> LocalOperator:
        return _make_op(self.site_dim, self.scalar * c, list(self.blocks))

    def as_sum(self) -> OperatorSum:
        return operator_sum([(1.0, self)], self.site_dim)

    def norm_exact(self, dim_cap: int = DENSE_DIM_CAP) -> float:
        """Operator norm, exact via multiplicativity across disjoint factors."""
        out = abs(self.scalar)
        for b in self.blocks:
            out *= operator_norm_dense(b.matrix, dim_cap)
        return float(out)

    def __mul__(self, other: LocalOperator) -> LocalOperator:
        return product(self, other)

    def __repr__(self) -> str:
        blocks = ",".join("{" + ",".join(map(str, b.sites)) + "}" for b in self.blocks)
        return (
            f"LocalOperator(d={self.site_dim}, scalar={self.scalar:.6g}, "
            f"blocks=[{blocks}])"
        )


def _make_op(site_dim, scalar, blocks) -> LocalOperator:
    """Canonicalize: sort blocks, fold exact identities, collapse exact zeros."""
    scalar = complex(scalar)
    kept = []
    for b in blocks:
        dim = b.matrix.shape[0]
        if not np.count_nonzero(b.matrix):
            scalar = 0j
            break
        if np.array_equal(b.matrix, np.eye(dim)):
            continue
        kept.append(b)
    if scalar == 0:
        return LocalOperator(site_dim, 0j, ())
    kept.sort(key=lambda b: b.sites[0])
    seen = set()
    for b in kept:
        for s in b.sites:
            if s in seen:
                raise ContractViolation(f"blocks overlap at site {s}")
            seen.add(s)
    return LocalOperator(site_dim, scalar, tuple(kept))


def local_operator(matrix, sites, site_dim: int = 2) -> LocalOperator:
    """Operator given by one dense ``matrix`` on the ascending ``sites`` tuple.

    An empty ``sites`` tuple with a 1x1 ``matrix`` denotes a scalar multiple
    of the identity.
    """
    sites = tuple(int(s) for s in sites)
    if not sites:
        matrix = check_finite(matrix)
        if matrix.shape != (1, 1):
            raise ContractViolation("empty support requires a 1x1 matrix")
        return _make_op(site_dim, complex(matrix[0, 0]), [])
    return _make_op(site_dim, 1.0, [_check_block(sites, matrix, site_dim)])


def from_site_factors(factors: dict[int, np.ndarray], site_dim: int = 2) -> LocalOperator:
    """Product operator with one single-site factor per entry of ``factors``."""
    blocks = [_check_block((s,), m, site_dim) for s, m in sorted(factors.items())]
    return _make_op(site_dim, 1.0, blocks)


def identity_op(site_dim: int = 2) -> LocalOperator:
    return LocalOperator(site_dim, 1.0 + 0j, ())


def zero_op(site_dim: int = 2) -> LocalOperator:
    return LocalOperator(site_dim, 0j, ())


def scalar_op(c: complex, site_dim: int = 2) -> LocalOperator:
    return _make_op(site_dim, c, [])


def pauli_at(kind, site: int) -> LocalOperator:
    from .matrices import pauli

    return local_operator(pauli(kind), (site,))


@dataclass(frozen=True, eq=False)
class OperatorSum:
    """Formal complex-weighted sum of :class:`LocalOperator` terms."""

    site_dim: int
    terms: tuple[tuple[complex, LocalOperator], ...]

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted({s for _, op in self.terms for s in op.support}))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def scale(self, c: complex) -> OperatorSum:
        return operator_sum([(c * w, op) for w, op in self.terms], self.site_dim)

    def adjoint(self) -> OperatorSum:
        return operator_sum(
            [(np.conj(w), op.adjoint()) for w, op in self.terms], self.site_dim
        )

    def __add__(self, other: OperatorSum) -> OperatorSum:
        _same_dim(self, other)
        return operator_sum(list(self.terms) + list(other.terms), self.site_dim)

    def __sub__(self, other: OperatorSum) -> OperatorSum:
        return self + other.scale(-1.0)

    def __mul__(self, other: OperatorSum) -> OperatorSum:
        return sum_product(self, other)

    def __repr__(self) -> str:
        sup = ",".join(map(str, self.support))
        return f"OperatorSum(d={self.site_dim}, {len(self.terms)} terms on {{{sup}}})"


def _same_dim(a, b):
    if a.site_dim != b.site_dim:
        raise ContractViolation(
            f"mismatched site dimensions: {a.site_dim} vs {b.site_dim}"
        )


def _op_fingerprint(op: LocalOperator):
    return (op.scalar, tuple((b.sites, b.matrix.tobytes()) for b in op.blocks))


def operator_sum(terms, site_dim: int | None = None) -> OperatorSum:
    """Build an :class:`OperatorSum`.

    Terms with value-identical operators are merged by summing coefficients,
    so differences of equal sums cancel to the empty term list exactly;
    exactly-zero terms are dropped.
    """
    merged: dict = {}
    for w, op in terms:
        w = complex(w)
        if site_dim is None:
            site_dim = op.site_dim
        elif op.site_dim != site_dim:
            raise ContractViolation("all terms of a sum must share site_dim")
        if w == 0 or op.is_zero:
            continue
        key = _op_fingerprint(op)
        if key in merged:
            merged[key] = (merged[key][0] + w, merged[key][1])
        else:
            merged[key] = (w, op)
    if site_dim is None:
        raise ContractViolation("cannot infer site_dim of an empty sum; pass it explicitly")
    kept = tuple((w, op) for w, op in merged.values() if w != 0)
    return OperatorSum(site_dim, kept)


def zero_sum(site_dim: int = 2) -> OperatorSum:
    return OperatorSum(site_dim, ())


# ---------------------------------------------------------------------------
# dense materialization


def _permute_site_axes(mat: np.ndarray, site_order, target_order, d: int) -> np.ndarray:
    """Reorder the tensor legs of ``mat`` from ``site_order`` to ``target_order``."""
    if tuple(site_order) == tuple(target_order):
        return mat
    n = len(site_order)
    pos = {s: i for i, s in enumerate(site_order)}
    axes_row = [pos[s] for s in target_order]
    axes = axes_row + [a + n for a in axes_row]
    return mat.reshape((d,) * (2 * n)).transpose(axes).reshape(mat.shape)


def _dense_from_blocks(scalar, blocks, sites, d, dim_cap) -> np.ndarray:
    """Dense matrix of ``scalar * (x) blocks`` on the ascending tuple ``sites``."""
    dim = d ** len(sites)
    if dim > dim_cap:
        raise CapacityError(
            f"dense materialization at dimension {dim} exceeds cap {dim_cap}"
        )
    covered = [s for b in blocks for s in b.sites]
    rest = [s for s in sites if s not in set(covered)]
    mats = [b.matrix for b in blocks]
    if rest:
        mats.append(np.eye(d ** len(rest), dtype=complex))
    out = scalar * (reduce(np.kron, mats) if mats else np.eye(1, dtype=complex))
    return _permute_site_axes(out, covered + rest, list(sites), d)


def dense_matrix(obj, volume, dim_cap: int = DENSE_DIM_CAP) -> np.ndarray:
    """Full d^N x d^N matrix of an operator or sum on the given volume."""
    n = as_volume(volume).size
    sites = tuple(range(1, n + 1))
    if isinstance(obj, LocalOperator):
        _check_support_fits(obj.support, n)
        return _dense_from_blocks(obj.scalar, obj.blocks, sites, obj.site_dim, dim_cap)
    _check_support_fits(obj.support, n)
    d = obj.site_dim
    out = np.zeros((d**n, d**n), dtype=complex)
    for w, op in obj.terms:
        out += w * _dense_from_blocks(op.scalar, op.blocks, sites, d, dim_cap)
    return out


def _check_support_fits(support, n):
    if support and (support[0] < 1 or support[-1] > n):
        raise ContractViolation(
            f"support {support} does not fit in volume of {n} sites"
        )


def embed(a: LocalOperator, target, dim_cap: int = DENSE_DIM_CAP) -> LocalOperator:
    """Tensor ``a`` with identities so it becomes a dense operator on the full volume.

    This is the explicit embedding used by oracles and small-volume work; the
    support-aware operations never need it.  Raises :class:`EmbeddingError`
    when the support sticks out of the target volume.
    """
    n = as_volume(target).size
    sup = a.support
    if sup and sup[-1] > n:
        raise EmbeddingError(
            f"support {sup} does not fit in volume of {n} sites"
        )
    mat = dense_matrix(a, n, dim_cap)
    return _make_op(a.site_dim, 1.0, [_check_block(tuple(range(1, n + 1)), mat, a.site_dim)])


# ---------------------------------------------------------------------------
# products and commutators


def _overlap_components(blocks_a, blocks_b):
    """Group blocks of two operators by support-overlap connectivity.

    Returns a list of components, each a pair (list of a-blocks, list of
    b-blocks).  Blocks within one operator are disjoint, so any component with
    more than one node mixes both operators.
    """
    nodes = [("a", b) for b in blocks_a] + [("b", b) for b in blocks_b]
    parent = list(range(len(nodes)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    site_owner: dict[int, int] = {}
    for i, (_, blk) in enumerate(nodes):
        for s in blk.sites:
            if s in site_owner:
                ra, rb = find(site_owner[s]), find(i)
                if ra != rb:
                    parent[rb] = ra
            else:
                site_owner[s] = i
    comps: dict[int, tuple[list, list]] = {}
    for i, (tag, blk) in enumerate(nodes):
        comp = comps.setdefault(find(i), ([], []))
        comp[0 if tag == "a" else 1].append(blk)
    return list(comps.values())


def product(a: LocalOperator, b: LocalOperator, dim_cap: int = DENSE_DIM_CAP) -> LocalOperator:
    """Operator product; densifies only on support-overlap components."""
    _same_dim(a, b)
    d = a.site_dim
    scalar = a.scalar * b.scalar
    if scalar == 0:
        return zero_op(d)
    out_blocks = []
    for ablks, bblks in _overlap_components(a.blocks, b.blocks):
        if not bblks:
            out_blocks.extend(ablks)
        elif not ablks:
            out_blocks.extend(bblks)
        else:
            sites = tuple(sorted({s for blk in ablks + bblks for s in blk.sites}))
            am = _dense_from_blocks(1.0, ablks, sites, d, dim_cap)
            bm = _dense_from_blocks(1.0, bblks, sites, d, dim_cap)
            out_blocks.append(Block(sites, am @ bm))
    return _make_op(d, scalar, out_blocks)


def commutator(a: LocalOperator, b: LocalOperator, dim_cap: int = DENSE_DIM_CAP) -> LocalOperator:
    """``a b - b a``; exactly zero, with no matrix work, for disjoint supports."""
    _same_dim(a, b)
    d = a.site_dim
    if a.is_zero or b.is_zero or not (set(a.support) & set(b.support)):
        return zero_op(d)
    spectators = []
    mixed_a, mixed_b = [], []
    for ablks, bblks in _overlap_components(a.blocks, b.blocks):
        if ablks and bblks:
            mixed_a.extend(ablks)
            mixed_b.extend(bblks)
        else:
            spectators.extend(ablks or bblks)
    sites = tuple(sorted({s for blk in mixed_a + mixed_b for s in blk.sites}))
    am = _dense_from_blocks(1.0, mixed_a, sites, d, dim_cap)
    bm = _dense_from_blocks(1.0, mixed_b, sites, d, dim_cap)
    comm = am @ bm - bm @ am
    if not np.count_nonzero(comm):
        return zero_op(d)
    return _make_op(d, a.scalar * b.scalar, spectators + [Block(sites, comm)])


def sum_product(a: OperatorSum, b: OperatorSum, dim_cap: int = DENSE_DIM_CAP) -> OperatorSum:
    _same_dim(a, b)
    terms = []
    for wa, oa in a.terms:
        for wb, ob in b.terms:
            terms.append((wa * wb, product(oa, ob, dim_cap)))
    return operator_sum(terms, a.site_dim)


def sum_commutator(a: OperatorSum, b: OperatorSum, dim_cap: int = DENSE_DIM_CAP) -> OperatorSum:
    """Termwise commutator with the disjoint-support short-circuit.

    When a single term pair overlaps on a region too large to densify (two
    long product operators), the pair is kept as the difference of the two
    factored products instead.
    """
    _same_dim(a, b)
    terms = []
    for wa, oa in a.terms:
        for wb, ob in b.terms:
            try:
                c = commutator(oa, ob, dim_cap)
            except CapacityError:
                terms.append((wa * wb, product(oa, ob, dim_cap)))
                terms.append((-wa * wb, product(ob, oa, dim_cap)))
                continue
            if not c.is_zero:
                terms.append((wa * wb, c))
    return operator_sum(terms, a.site_dim)


# ---------------------------------------------------------------------------
# support reduction


def reduce_support(a: LocalOperator, tol: float = 1e-12) -> LocalOperator:
    """Drop sites whose tensor factor is the identity (within ``tol``).

    Each candidate site is tested by comparing the block against identity
    tensor its normalized partial trace over that site; exact constructors
    produce exact identities, the tolerance only guards float noise.
    """
    d = a.site_dim
    if a.is_zero:
        return a
    new_blocks = []
    new_scalar = a.scalar
    for blk in a.blocks:
        sites = list(blk.sites)
        mat = np.array(blk.matrix)
        changed = True
        while changed and sites:
            changed = False
            k = len(sites)
            if k == 1:
                c = np.trace(mat) / d
                if np.max(np.abs(mat - c * np.eye(d))) <= tol:
                    new_scalar *= c
                    sites, mat = [], None
                    changed = True
                continue
            tensor = mat.reshape((d,) * (2 * k))
            for t in range(k):
                rest = np.trace(tensor, axis1=t, axis2=k + t).reshape(
                    (d ** (k - 1),) * 2
                ) / d
                order = [sites[t]] + sites[:t] + sites[t + 1 :]
                cand = _permute_site_axes(
                    np.kron(np.eye(d, dtype=complex), rest), order, sites, d
                )
                if np.max(np.abs(mat - cand)) <= tol:
                    sites = sites[:t] + sites[t + 1 :]
                    mat = rest
                    changed = True
                    break
        if sites:
            new_blocks.append(Block(tuple(sites), _frozen(mat)))
    return _make_op(d, new_scalar, new_blocks)


# ---------------------------------------------------------------------------
# state vectors and matrix-free application


@dataclass(frozen=True, eq=False)
class StateVector:
    volume: Volume
    site_dim: int
    amplitudes: np.ndarray


def state_vector(amplitudes, volume, site_dim: int = 2) -> StateVector:
    vol = as_volume(volume)
    amplitudes = np.asarray(amplitudes, dtype=complex)
    if amplitudes.shape != (site_dim**vol.size,):
        raise ContractViolation(
            f"state on {vol.size} sites needs length {site_dim**vol.size}, "
            f"got {amplitudes.shape}"
        )
    return StateVector(vol, site_dim, amplitudes)


def _apply_block_tensor(vec_t: np.ndarray, blk: Block, d: int) -> np.ndarray:
    k = len(blk.sites)
    axes = [s - 1 for s in blk.sites]
    t = blk.matrix.reshape((d,) * (2 * k))
    out = np.tensordot(t, vec_t, axes=(list(range(k, 2 * k)), axes))
    return np.moveaxis(out, range(k), axes)


def _apply_terms(vec_t: np.ndarray, terms, d: int) -> np.ndarray:
    out = np.zeros_like(vec_t)
    for w, op in terms:
        cur = vec_t
        for blk in op.blocks:
            cur = _apply_block_tensor(cur, blk, d)
        out += (w * op.scalar) * cur
    return out


def sum_apply(s: OperatorSum, v: StateVector) -> StateVector:
    """Apply a sum to a state, touching only each term's support legs."""
    n = v.volume.size
    if s.site_dim != v.site_dim:
        raise ContractViolation("operator and state disagree on site dimension")
    _check_support_fits(s.support, n)
    vec_t = v.amplitudes.reshape((v.site_dim,) * n) if n else v.amplitudes
    out = _apply_terms(vec_t, s.terms, v.site_dim)
    return StateVector(v.volume, v.site_dim, out.reshape(v.amplitudes.shape))


# ---------------------------------------------------------------------------
# norms


@dataclass(frozen=True)
class NormResult:
    value: float
    converged: bool
    iterations: int = 0

    def __float__(self) -> float:
        return self.value


def _compact_terms(s: OperatorSum):
    """Relabel the union support to {1..m}; norms are invariant under this."""
    union = s.support
    rank = {site: i + 1 for i, site in enumerate(union)}
    terms = []
    for w, op in s.terms:
        blocks = [Block(tuple(rank[x] for x in b.sites), b.matrix) for b in op.blocks]
        terms.append((w, LocalOperator(op.site_dim, op.scalar, tuple(blocks))))
    return terms, len(union)


def _power_iteration_norm(gram_apply, dim, rng, tol, max_iter, block=4, confirm=8):
    """Largest singular value via block power iteration on ``a* a``.

    The top Ritz value of the iterated block is nondecreasing for a PSD
    operator; convergence is declared once the geometric-tail estimate of
    the remaining increase stays below ``tol * max(1, rho)`` for ``confirm``
    consecutive iterations.  A single iterated vector is not enough: a tight
    cluster at the top makes its Rayleigh quotient stall convincingly below
    the true value, while a block of ``block`` vectors resolves clusters up
    to that size outright and converges at the much faster rate set by the
    (block+1)-th eigenvalue.
    """
    b = min(block, dim)
    for _restart in range(3):
        v = rng.normal(size=(dim, b)) + 1j * rng.normal(size=(dim, b))
        v, _ = np.linalg.qr(v)
        rho_prev = None
        delta_prev = None
        best = 0.0
        hits = 0
        annihilated = False
        for it in range(1, max_iter + 1):
            w = np.column_stack([gram_apply(v[:, j]) for j in range(b)])
            if not np.any(w):
                annihilated = True
                break  # whole block in the kernel; restart afresh
            ritz = v.conj().T @ w
            ritz = (ritz + ritz.conj().T) / 2
            rho = float(np.linalg.eigvalsh(ritz)[-1])
            best = max(best, rho)
            if rho_prev is not None:
                delta = rho - rho_prev
                if delta <= 0.0:
                    # monotone sequence exhausted by float precision
                    return NormResult(float(np.sqrt(max(rho, 0.0))), True, it)
                scale = tol * max(1.0, rho)
                ok = False
                if delta <= scale and delta_prev is not None and delta_prev > 0.0:
                    ratio = delta / delta_prev
                    remaining = delta * ratio / (1.0 - ratio) if ratio < 1.0 else np.inf
                    ok = remaining <= scale
                hits = hits + 1 if ok else 0
                if hits >= confirm:
                    return NormResult(float(np.sqrt(max(rho, 0.0))), True, it)
                delta_prev = delta
            rho_prev = rho
            v, _ = np.linalg.qr(w)
        if not annihilated:
            return NormResult(float(np.sqrt(max(best, 0.0))), False, max_iter)
    # three independent start blocks annihilated: the operator is zero
    return NormResult(0.0, True, 0)


def norm(
    s,
    volume,
    method: str = "auto",
    *,
    dense_cap: int = DENSE_DIM_CAP,
    tol: float = 1e-9,
    max_iter: int = 10000,
    seed: int = 7,
) -> NormResult:
    """Operator norm of a sum (or single operator) on the given volume.

    ``method`` is ``"dense"`` (Hermitian eigensolve, exact), ``"iterative"``
    (matrix-free power iteration on ``a* a``, deterministic seeded start), or
    ``"auto"``.  Both paths first compact the sum onto its union support,
    which leaves the norm unchanged.  Single-term sums are exact products of
    per-block dense norms for every method.  An unconverged power iteration
    is reported via the ``converged`` flag, never as a silent wrong answer.
    """
    if isinstance(s, LocalOperator):
        s = s.as_sum()
    n = as_volume(volume).size
    _check_support_fits(s.support, n)
    if method not in ("dense", "iterative", "auto"):
        raise ContractViolation(f"unknown norm method {method!r}")
    if s.is_zero:
        return NormResult(0.0, True, 0)
    if len(s.terms) == 1:
        w, op = s.terms[0]
        try:
            return NormResult(abs(w) * op.norm_exact(dense_cap), True, 0)
        except CapacityError:
            if method == "dense":
                raise
            # a single block larger than the cap: fall through to iteration
    terms, m = _compact_terms(s)
    d = s.site_dim
    dim = d**m
    if method == "auto":
        method = "dense" if dim <= dense_cap else "iterative"
    if method == "dense":
        if dim > dense_cap:
            raise CapacityError(
                f"dense norm at dimension {dim} exceeds cap {dense_cap}; "
                "use method='iterative'"
            )
        sites = tuple(range(1, m + 1))
        mat = np.zeros((dim, dim), dtype=complex)
        for w, op in terms:
            mat += w * _dense_from_blocks(op.scalar, op.blocks, sites, d, dense_cap)
        return NormResult(operator_norm_dense(mat, dense_cap), True, 0)
    if dim > ITERATIVE_STATE_CAP:
        raise CapacityError(
            f"iterative norm needs state vectors of length {dim}, above the cap "
            f"{ITERATIVE_STATE_CAP}"
        )
    adj_terms = [(np.conj(w), op.adjoint()) for w, op in terms]
    shape = (d,) * m if m else (1,)

    def gram_apply(v):
        t = v.reshape(shape)
        t = _apply_terms(t, terms, d)
        t = _apply_terms(t, adj_terms, d)
        return t.reshape(v.shape)

    rng = np.random.default_rng((seed, n, len(terms)))
    return _power_iteration_norm(gram_apply, dim, rng, tol, max_iter)
