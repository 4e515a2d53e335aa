"""Dense row echelon forms over a prime field GF(p).

Rows are stored as floating point arrays holding exact integers in
``[0, p)``.  Products go through BLAS; the inner dimension is split so that
every partial sum stays below the exact-integer range of the dtype
(2^24 for float32, 2^53 for float64).  Extension fields are handled one
level up by writing every coefficient in prime-field coordinates.
"""

from __future__ import annotations

import numpy as np

_EXACT32 = float(1 << 24)
_EXACT64 = float(1 << 53)
BASE = 16


def _dtype_for(p: int, inner: int):
    return np.float32 if (p - 1) ** 2 * max(inner, 1) < _EXACT32 else np.float64


def matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """(A @ B) mod p for exact-integer float matrices."""
    inner = A.shape[1]
    if inner == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.float64)
    sq = float((p - 1) ** 2)
    if sq * inner < _EXACT32:
        out = A.astype(np.float32, copy=False) @ B.astype(np.float32, copy=False)
        return np.remainder(out.astype(np.float64), p)
    step = max(1, int(_EXACT64 // max(sq, 1.0)) - 1)
    if step >= inner:
        return np.remainder(A.astype(np.float64, copy=False) @ B.astype(np.float64, copy=False), p)
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.float64)
    for s in range(0, inner, step):
        out += A[:, s:s + step].astype(np.float64) @ B[s:s + step].astype(np.float64)
        np.remainder(out, p, out=out)
    return out


def _inverses(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, p - 2, p)
    return inv


class Echelon:
    """Reduced row echelon basis of a subspace of GF(p)^ncols.

    ``rows[k]`` has a 1 in column ``pivots[k]`` and zeros in every other
    pivot column.  Rows are kept sorted by pivot column, so the form is
    canonical for the subspace.
    """

    def __init__(self, p: int, ncols: int):
        self.p = p
        self.ncols = ncols
        self.dtype = _dtype_for(p, ncols)
        self._rows = np.zeros((0, ncols), dtype=self.dtype)
        self._pivots = np.zeros(0, dtype=np.int64)
        self._inv = _inverses(p) if p < (1 << 16) else None

    # -- views ------------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self._pivots)

    @property
    def rows(self) -> np.ndarray:
        return self._rows

    @property
    def pivots(self) -> np.ndarray:
        return self._pivots

    def copy(self) -> "Echelon":
        other = Echelon.__new__(Echelon)
        other.p, other.ncols, other.dtype, other._inv = self.p, self.ncols, self.dtype, self._inv
        other._rows = self._rows.copy()
        other._pivots = self._pivots.copy()
        return other

    def rows_from(self, col: int) -> np.ndarray:
        """Rows whose pivot is at column >= ``col``; with degree-descending
        columns these span the intersection with the low-degree suffix."""
        k = int(np.searchsorted(self._pivots, col))
        return self._rows[k:]

    def count_from(self, col: int) -> int:
        return self.rank - int(np.searchsorted(self._pivots, col))

    # -- reduction --------------------------------------------------------
    def _as_block(self, vecs) -> np.ndarray:
        A = np.asarray(vecs, dtype=np.float64)
        if A.ndim == 1:
            A = A[None, :]
        if A.shape[1] != self.ncols:
            raise ValueError(f"expected {self.ncols} columns, got {A.shape[1]}")
        return np.remainder(A, self.p)

    def reduce(self, vecs) -> np.ndarray:
        """Remainders of ``vecs`` modulo the row space (zero on pivot columns)."""
        A = self._as_block(vecs)
        if self.rank == 0 or A.shape[0] == 0:
            return A
        coeff = A[:, self._pivots]
        return np.remainder(A - matmul_mod(coeff, self._rows, self.p), self.p)

    def contains(self, vecs) -> np.ndarray:
        R = self.reduce(vecs)
        return ~R.any(axis=1)

    def _inverse(self, a: int) -> int:
        return int(self._inv[a]) if self._inv is not None else pow(int(a), self.p - 2, self.p)

    def _gauss(self, B: np.ndarray):
        """Gauss-Jordan on a short block; returns (rows, pivots) sorted by pivot."""
        p = self.p
        B = B.copy()
        piv_rows = []
        piv_cols = []
        for r in range(B.shape[0]):
            nz = np.flatnonzero(B[r])
            if nz.size == 0:
                continue
            c = int(nz[0])
            a = int(B[r, c])
            if a != 1:
                B[r] = np.remainder(B[r] * self._inverse(a), p)
            col = B[:, c].copy()
            col[r] = 0
            hit = np.flatnonzero(col)
            if hit.size:
                B[hit] = np.remainder(B[hit] - np.outer(col[hit], B[r]), p)
            piv_rows.append(r)
            piv_cols.append(c)
        if not piv_rows:
            return B[:0], np.zeros(0, dtype=np.int64)
        piv = np.asarray(piv_cols, dtype=np.int64)
        order = np.argsort(piv, kind="stable")
        return B[np.asarray(piv_rows)[order]], piv[order]

    def _rref(self, B: np.ndarray):
        """Reduced echelon form of the rows of B, by splitting the row set.

        Each half is reduced recursively, the lower half is cleared against
        the upper one and the upper rows are then cleared against the new
        pivots, so the elementwise work is O(rows * cols * log rows).
        """
        if B.shape[0] <= BASE:
            return self._gauss(B)
        half = B.shape[0] // 2
        E1, P1 = self._rref(B[:half])
        rest = B[half:]
        if len(P1):
            rest = np.remainder(rest - matmul_mod(rest[:, P1], E1, self.p), self.p)
        rest = rest[rest.any(axis=1)]
        if rest.shape[0] == 0:
            return E1, P1
        E2, P2 = self._rref(rest)
        return self._merge(E1, P1, E2, P2)

    def _merge(self, E1, P1, E2, P2):
        if len(P1) and len(P2):
            coeff = E1[:, P2]
            if coeff.any():
                E1 = np.remainder(E1 - matmul_mod(coeff, E2, self.p), self.p)
        rows = np.vstack([E1, E2])
        piv = np.concatenate([P1, P2])
        order = np.argsort(piv, kind="stable")
        return rows[order], piv[order]

    def insert(self, vecs) -> int:
        """Add ``vecs`` to the space; returns the number of new pivots."""
        A = self.reduce(vecs)
        A = A[A.any(axis=1)]
        if A.shape[0] == 0:
            return 0
        E2, P2 = self._rref(A)
        if len(P2) == 0:
            return 0
        rows, piv = self._merge(self._rows.astype(np.float64), self._pivots, E2, P2)
        self._rows = rows.astype(self.dtype)
        self._pivots = piv
        return len(P2)


def rank_mod_p(rows, p: int) -> int:
    rows = np.asarray(rows)
    if rows.size == 0:
        return 0
    E = Echelon(p, rows.shape[1])
    E.insert(rows)
    return E.rank


def nullspace_first(vecs, p: int):
    """Earliest linear dependency among the rows of ``vecs``.

    Returns ``(J, coeffs)`` with coeffs[J] == 1, coeffs[j] == 0 for j > J and
    sum_j coeffs[j] * vecs[j] == 0, where J is minimal; or ``None``.
    """
    V = np.asarray(vecs, dtype=np.float64)
    n, w = V.shape
    aug = np.hstack([np.remainder(V, p), np.eye(n)])
    E = Echelon(p, w + n)
    for j in range(n):
        row = E.reduce(aug[j])[0]
        if not row[:w].any():
            coeffs = row[w:].astype(np.int64)
            c = int(coeffs[j])
            scale = pow(c, p - 2, p)
            return j, [(int(x) * scale) % p for x in coeffs]
        E.insert(row[None, :])
    return None
