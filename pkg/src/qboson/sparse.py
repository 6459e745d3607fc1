"""Coordinate-list complex matrices used for operators, oracles, and verification.

Entries are kept canonical: sorted by (row, col), duplicates summed, and
magnitudes below ``ZERO_TOL`` (absolute) dropped.
"""
from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np
import scipy.sparse as sp

# Absolute magnitude below which an entry counts as double-precision noise.
ZERO_TOL = 1e-14

# max |M - M^dagger| allowed for a matrix to certify as Hermitian
HERMITICITY_TOL = 1e-12


class SparseOperator:
    """Square complex matrix stored as canonical (row, col, value) triplets."""

    __slots__ = ("dim", "rows", "cols", "vals")

    def __init__(self, dim: int, rows=None, cols=None, vals=None):
        if dim < 1:
            raise ValueError(f"dimension must be positive, got {dim}")
        self.dim = int(dim)
        rows = np.asarray([] if rows is None else rows, dtype=np.int64)
        cols = np.asarray([] if cols is None else cols, dtype=np.int64)
        vals = np.asarray([] if vals is None else vals, dtype=np.complex128)
        if not (rows.shape == cols.shape == vals.shape):
            raise ValueError("rows, cols, vals must have matching lengths")
        if rows.size and (rows.min() < 0 or rows.max() >= dim
                          or cols.min() < 0 or cols.max() >= dim):
            raise ValueError("entry index out of range")
        self.rows, self.cols, self.vals = _canonicalize(dim, rows, cols, vals)

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_entries(cls, dim: int, entries: Iterable[tuple[int, int, complex]]) -> "SparseOperator":
        ent = list(entries)
        if not ent:
            return cls(dim)
        r, c, v = zip(*ent)
        return cls(dim, r, c, v)

    @classmethod
    def from_dense(cls, matrix) -> "SparseOperator":
        m = np.asarray(matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {m.shape}")
        r, c = np.nonzero(np.abs(m) > ZERO_TOL)
        return cls(m.shape[0], r, c, m[r, c])

    @classmethod
    def from_csr(cls, matrix: sp.spmatrix) -> "SparseOperator":
        coo = sp.coo_matrix(matrix)
        if coo.shape[0] != coo.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {coo.shape}")
        return cls(coo.shape[0], coo.row, coo.col, coo.data)

    @classmethod
    def identity(cls, dim: int) -> "SparseOperator":
        idx = np.arange(dim)
        return cls(dim, idx, idx, np.ones(dim))

    @classmethod
    def zeros(cls, dim: int) -> "SparseOperator":
        return cls(dim)

    # -- views -------------------------------------------------------------

    @property
    def nnz(self) -> int:
        return int(self.vals.size)

    def entries(self) -> Iterator[tuple[int, int, complex]]:
        """Iterate canonical (row, col, value) triplets."""
        for r, c, v in zip(self.rows, self.cols, self.vals):
            yield int(r), int(c), complex(v)

    def entry_dict(self) -> dict[tuple[int, int], complex]:
        return {(int(r), int(c)): complex(v)
                for r, c, v in zip(self.rows, self.cols, self.vals)}

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=np.complex128)
        out[self.rows, self.cols] = self.vals
        return out

    def to_csr(self) -> sp.csr_matrix:
        return sp.csr_matrix((self.vals, (self.rows, self.cols)),
                             shape=(self.dim, self.dim))

    # -- algebra -----------------------------------------------------------

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        self._check_dim(other)
        return SparseOperator(self.dim,
                              np.concatenate([self.rows, other.rows]),
                              np.concatenate([self.cols, other.cols]),
                              np.concatenate([self.vals, other.vals]))

    def __sub__(self, other: "SparseOperator") -> "SparseOperator":
        return self + (-1.0) * other

    def __mul__(self, scalar) -> "SparseOperator":
        return SparseOperator(self.dim, self.rows, self.cols, self.vals * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "SparseOperator":
        return self * (-1.0)

    def __matmul__(self, other: "SparseOperator") -> "SparseOperator":
        self._check_dim(other)
        return SparseOperator.from_csr(self.to_csr() @ other.to_csr())

    def power(self, exponent: int) -> "SparseOperator":
        """Matrix power by repeated multiplication (exponent >= 0)."""
        if exponent < 0:
            raise ValueError("exponent must be nonnegative")
        out = SparseOperator.identity(self.dim)
        for _ in range(exponent):
            out = out @ self
        return out

    def dagger(self) -> "SparseOperator":
        return SparseOperator(self.dim, self.cols, self.rows, np.conj(self.vals))

    def kron(self, other: "SparseOperator") -> "SparseOperator":
        """Kronecker product; ``other`` indexes the less significant block."""
        return SparseOperator.from_csr(sp.kron(self.to_csr(), other.to_csr(), format="csr"))

    # -- diagnostics ---------------------------------------------------------

    def max_abs(self) -> float:
        return float(np.abs(self.vals).max()) if self.nnz else 0.0

    def max_abs_diff(self, other: "SparseOperator") -> float:
        return (self - other).max_abs()

    def hermiticity_error(self) -> float:
        """max |M - M^dagger| over all entries."""
        return self.max_abs_diff(self.dagger())

    def is_hermitian(self, tol: float = HERMITICITY_TOL) -> bool:
        return self.hermiticity_error() <= tol

    def _check_dim(self, other: "SparseOperator") -> None:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __repr__(self) -> str:
        return f"SparseOperator(dim={self.dim}, nnz={self.nnz})"


def _canonicalize(dim, rows, cols, vals):
    """Sort by (row, col), merge duplicates, prune near-zero entries."""
    if rows.size == 0:
        return rows, cols, vals
    keys = rows * dim + cols
    order = np.argsort(keys, kind="stable")
    keys, rows, cols, vals = keys[order], rows[order], cols[order], vals[order]
    uniq, inverse = np.unique(keys, return_inverse=True)
    merged = np.zeros(uniq.size, dtype=np.complex128)
    np.add.at(merged, inverse, vals)
    keep = np.abs(merged) > ZERO_TOL
    uniq, merged = uniq[keep], merged[keep]
    return uniq // dim, uniq % dim, merged


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def qubit_count(dim: int) -> int:
    """Number of qubits for a 2**n dimension; raises if dim is not a power of two."""
    if not is_power_of_two(dim):
        raise ValueError(f"dimension {dim} is not a power of two")
    return dim.bit_length() - 1
