"""Pauli-string decomposition of Hermitian matrices by two independent routes.

``decompose_trace`` sweeps all 4**n strings and projects with trace inner
products; it is the oracle and is capped at small n. ``decompose_tensorized``
splits the matrix into quadrants on the most-significant qubit and recurses,
which stays cheap for sparse operators and reaches the n = 14 regime.
"""
from __future__ import annotations

import numpy as np

from .errors import CapExceededError
from .pauli import RELATIVE_PRUNE_TOL, PauliSum
from .sparse import SparseOperator, qubit_count

TRACE_QUBIT_CAP = 8


def decompose_trace(op: SparseOperator, cap: int = TRACE_QUBIT_CAP,
                    rel_tol: float = RELATIVE_PRUNE_TOL) -> PauliSum:
    """Project onto every Pauli string: coeff(P) = Tr(P^dagger M) / 2**n.

    The sweep iterates the nonzero entries of M only: the string (x, z)
    receives contributions from entries with row = col XOR x. Cost still grows
    like 4**n, hence the hard cap.
    """
    n = qubit_count(op.dim)
    if n > cap:
        raise CapExceededError(f"decompose_trace capped at {cap} qubits, got {n}")
    dim = op.dim
    zs = np.arange(dim)
    coeffs: dict[tuple[int, int], complex] = {}
    xors = op.rows ^ op.cols
    for x in np.unique(xors):
        sel = xors == x
        cols = op.cols[sel]
        vals = op.vals[sel]
        # signs[z, k] = (-1)^popcount(z & col_k); phase = conj(i^{#Y}) per z
        signs = 1.0 - 2.0 * (np.bitwise_count(zs[:, None] & cols[None, :]) & 1)
        sums = signs @ vals
        phases = (-1j) ** (np.bitwise_count(zs & int(x)) % 4)
        cvals = phases * sums / dim
        for z in np.nonzero(np.abs(cvals) > 0)[0]:
            coeffs[(int(x), int(z))] = complex(cvals[z])
    return PauliSum(n, coeffs).prune(rel_tol)


def decompose_tensorized(op: SparseOperator,
                         rel_tol: float = RELATIVE_PRUNE_TOL) -> PauliSum:
    """Recursive quadrant split on the most-significant qubit.

    For M with blocks [[A, B], [C, D]] (block index = top bit), recurse on
    (A+D)/2 -> I, (B+C)/2 -> X, i(B-C)/2 -> Y, (A-D)/2 -> Z. Exactly-zero
    blocks are dropped as they appear, so sparse inputs stay sparse all the
    way down; worst-case memory is O(4**n) coefficients.
    """
    n = qubit_count(op.dim)
    coeffs: dict[tuple[int, int], complex] = {}
    entries = op.entry_dict()

    def recurse(items: dict[tuple[int, int], complex], k: int, x: int, z: int) -> None:
        if not items:
            return
        if k == 0:
            c = items.get((0, 0))
            if c:
                coeffs[(x, z)] = coeffs.get((x, z), 0.0) + c
            return
        h = 1 << (k - 1)
        quad_a: dict[tuple[int, int], complex] = {}
        quad_b: dict[tuple[int, int], complex] = {}
        quad_c: dict[tuple[int, int], complex] = {}
        quad_d: dict[tuple[int, int], complex] = {}
        for (r, c), v in items.items():
            if r < h:
                (quad_a if c < h else quad_b)[(r, c % h)] = v
            else:
                (quad_c if c < h else quad_d)[(r - h, c % h)] = v
        bit = h
        recurse(_combine(quad_a, quad_d, 0.5), k - 1, x, z)               # I
        recurse(_combine(quad_a, quad_d, 0.5, -1.0), k - 1, x, z | bit)   # Z
        recurse(_combine(quad_b, quad_c, 0.5), k - 1, x | bit, z)         # X
        recurse(_combine(quad_b, quad_c, 0.5j, -1.0), k - 1, x | bit, z | bit)  # Y

    recurse(entries, n, 0, 0)
    return PauliSum(n, coeffs).prune(rel_tol)


def _combine(first, second, scale, sign=1.0):
    out = dict(first)
    for rc, v in second.items():
        w = out.get(rc, 0.0) + sign * v
        if w:
            out[rc] = w
        elif rc in out:
            del out[rc]
    return {rc: v * scale for rc, v in out.items()}


def reconstruct(psum: PauliSum) -> SparseOperator:
    """Sum of coefficient * string matrix over all terms."""
    dim = 1 << psum.n_qubits
    rows_all, cols_all, vals_all = [], [], []
    cols = np.arange(dim)
    popc = np.bitwise_count
    for t in psum.terms():
        signs = 1.0 - 2.0 * (popc(cols & t.z_mask) & 1)
        phase = 1j ** (t.n_y % 4)
        rows_all.append(cols ^ t.x_mask)
        cols_all.append(cols)
        vals_all.append(t.coefficient * phase * signs)
    if not rows_all:
        return SparseOperator.zeros(dim)
    return SparseOperator(dim, np.concatenate(rows_all),
                          np.concatenate(cols_all), np.concatenate(vals_all))
