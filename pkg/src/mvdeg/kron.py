"""Matrix-free powers of the time-path / channel-graph product.

The joint adjacency over (time, channel) vertices is

    A = shift (x) Id_p + Id_N (x) W

where (x) is the Kronecker product, shift is the one-step successor matrix of
the directed path on N time vertices, and W is the channel graph. The two
summands commute, so

    A^k = sum_j C(k, j) * shift^j (x) W^(k-j)

and shift^j is itself a j-step shift. Applying A^k to a stacked signal
therefore needs only k+1 shifted copies and channel-side matmuls: O(k N p^2)
time and O(N p + k p^2) memory, never an (N p)^2 matrix.

Stacked layout: entry (t * p) + ch of a vector is channel ch at time t, so a
Kronecker factor acting on the left index is the time axis and the right index
is the channel axis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .errors import DimensionError, SizeCapError
from .graphs import WeightedGraph
from .signal import MultivariateSignal

DENSE_CAP = 4096  # max side length for any dense oracle matrix


@dataclass(frozen=True)
class PathShift:
    """k-step successor matrix of the directed path on n time vertices.

    Entry (i, j) is 1 exactly when j = i + k; zero matrix when k >= n.
    """

    n: int
    k: int

    def __post_init__(self):
        if self.n < 1:
            raise DimensionError("path needs at least one vertex")
        if self.k < 0:
            raise DimensionError(f"hop order must be >= 0, got {self.k}")

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.n, self.n))
        if self.k < self.n:
            idx = np.arange(self.n - self.k)
            out[idx, idx + self.k] = 1.0
        return out

    def apply(self, rows: np.ndarray) -> np.ndarray:
        """Shift time-major rows up by k steps, zero-filling the tail."""
        out = np.zeros_like(rows)
        if self.k < self.n:
            out[: self.n - self.k] = rows[self.k:]
        return out

    def row_support(self) -> np.ndarray:
        """Boolean vector: rows that still land inside the path."""
        return np.arange(self.n) <= self.n - 1 - self.k


def path_power(n: int, k: int) -> PathShift:
    """Closed form for the k-th power of the one-step path shift."""
    return PathShift(n, k)


@dataclass(frozen=True)
class ProductPower:
    """Binomial expansion of the k-th power of the product adjacency.

    terms holds (coefficient, time shift, channel-graph power) triples whose
    Kronecker sum equals A^k.
    """

    n_time: int
    graph: WeightedGraph
    k: int
    terms: tuple[tuple[int, PathShift, np.ndarray], ...] = field(compare=False)

    def to_dense(self, dense_cap: int = DENSE_CAP) -> np.ndarray:
        side = self.n_time * self.graph.n
        if side > dense_cap:
            raise SizeCapError(side, dense_cap)
        out = np.zeros((side, side))
        for coef, shift, channel_power in self.terms:
            out += coef * np.kron(shift.to_dense(), channel_power)
        return out


def _channel_powers(graph: WeightedGraph, up_to: int) -> list[np.ndarray]:
    """W^0 .. W^up_to by repeated multiplication."""
    powers = [np.eye(graph.n)]
    for _ in range(up_to):
        powers.append(powers[-1] @ graph.weights)
    return powers


def product_power_terms(n_time: int, graph: WeightedGraph, k: int) -> ProductPower:
    """Expand A^k as sum_j C(k, j) * shift^j (x) W^(k-j)."""
    if n_time < 1:
        raise DimensionError("path needs at least one vertex")
    if k < 0:
        raise DimensionError(f"power must be >= 0, got {k}")
    powers = _channel_powers(graph, k)
    terms = tuple(
        (comb(k, j), path_power(n_time, j), powers[k - j]) for j in range(k + 1)
    )
    return ProductPower(n_time=n_time, graph=graph, k=k, terms=terms)


def product_adjacency(
    n_time: int, graph: WeightedGraph, dense_cap: int = DENSE_CAP
) -> np.ndarray:
    """Dense product adjacency; oracle path, capped at dense_cap side length."""
    if n_time < 1:
        raise DimensionError("path needs at least one vertex")
    side = n_time * graph.n
    if side > dense_cap:
        raise SizeCapError(side, dense_cap)
    shift = path_power(n_time, 1).to_dense()
    return np.kron(shift, np.eye(graph.n)) + np.kron(np.eye(n_time), graph.weights)


def naive_power(matrix: np.ndarray, k: int, dense_cap: int = DENSE_CAP) -> np.ndarray:
    """Dense matrix power by repeated multiplication; oracle path."""
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"matrix must be square, got shape {m.shape}")
    if m.shape[0] > dense_cap:
        raise SizeCapError(m.shape[0], dense_cap)
    if k < 0:
        raise DimensionError(f"power must be >= 0, got {k}")
    out = np.eye(m.shape[0])
    for _ in range(k):
        out = out @ m
    return out


def _hop_from_powers(
    time_major: np.ndarray, powers: list[np.ndarray], k: int
) -> tuple[np.ndarray, np.ndarray]:
    """Normalized k-hop aggregate of time-major (N, p) samples.

    Returns (values, valid), both (N, p). Entry (t, ch) is the row-sum
    normalized value of A^k applied to the stacked signal. Entries whose k-step
    horizon leaves the time axis (t + k > N - 1) are invalid and zeroed; on the
    remaining entries the row sum is >= 1 (the j = k expansion term alone
    contributes 1), so the division is always defined.
    """
    n, p = time_major.shape
    acc = np.zeros((n, p))
    row_sums = np.zeros((n, p))
    for j in range(k + 1):
        coef = float(comb(k, j))
        shift = PathShift(n, j)
        shifted = shift.apply(time_major)
        channel_power = powers[k - j]
        acc += coef * (shifted @ channel_power.T)
        row_sums += coef * np.outer(
            shift.row_support().astype(float), channel_power.sum(axis=1)
        )
    valid = np.zeros((n, p), dtype=bool)
    if k < n:
        valid[: n - k, :] = True
    values = np.zeros((n, p))
    np.divide(acc, row_sums, out=values, where=valid)
    return values, valid


def apply_hop(
    signal: MultivariateSignal, graph: WeightedGraph, k: int
) -> tuple[np.ndarray, np.ndarray]:
    """Row-sum normalized k-hop aggregate in stacked layout.

    Returns (values, valid), both of length N * p, where values equals
    diag(1 / rowsum(A^k)) A^k applied to the stacked signal on valid entries
    and 0 elsewhere.
    """
    if signal.p != graph.n:
        raise DimensionError(
            f"signal has {signal.p} channels but graph has {graph.n} vertices"
        )
    if k < 0:
        raise DimensionError(f"hop order must be >= 0, got {k}")
    powers = _channel_powers(graph, k)
    values, valid = _hop_from_powers(signal.values.T, powers, k)
    return values.reshape(-1), valid.reshape(-1)


@dataclass(frozen=True)
class HopBasis:
    """Embedding columns y_0 .. y_(m-1) for one signal and channel graph.

    values[:, k] is the k-hop aggregate in stacked layout; valid[:, k] flags
    entries whose k-step horizon stays on the time axis. Column 0 is the
    stacked signal itself and is valid everywhere.
    """

    values: np.ndarray
    valid: np.ndarray
    n_time: int
    graph: WeightedGraph

    @property
    def m(self) -> int:
        return self.values.shape[1]

    def row_mask(self) -> np.ndarray:
        """Rows valid in every column; these survive into the pattern set."""
        return self.valid.all(axis=1)


def build_hop_basis(signal: MultivariateSignal, graph: WeightedGraph, m: int) -> HopBasis:
    """Stack hop aggregates for k = 0 .. m-1 into an (N p, m) matrix."""
    if m < 1:
        raise DimensionError(f"embedding needs m >= 1 columns, got {m}")
    if signal.p != graph.n:
        raise DimensionError(
            f"signal has {signal.p} channels but graph has {graph.n} vertices"
        )
    powers = _channel_powers(graph, m - 1)
    time_major = signal.values.T
    cols = []
    masks = []
    for k in range(m):
        values, valid = _hop_from_powers(time_major, powers[: k + 1], k)
        cols.append(values.reshape(-1))
        masks.append(valid.reshape(-1))
    return HopBasis(
        values=np.stack(cols, axis=1),
        valid=np.stack(masks, axis=1),
        n_time=signal.n_samples,
        graph=graph,
    )
