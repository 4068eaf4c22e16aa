"""Dense matrices over a finite field: rref, rank, null space, erasure solving.

All matrices are small (desk-scale codes), so the elimination routines are
straightforward scalar-arithmetic loops; the performance-critical enumeration
paths live in :mod:`cooplrc.kernels`.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import UncorrectableErasure
from .field import Field, field_from_size


@dataclass(frozen=True)
class MatrixGF:
    """A rows x cols matrix over a finite field, entries encoded as ints."""

    field: Field
    data: np.ndarray = dc_field(repr=False)

    def __post_init__(self):
        arr = np.ascontiguousarray(self.data, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("matrix data must be 2-dimensional")
        if arr.size and (arr.min() < 0 or arr.max() >= self.field.q):
            raise ValueError(f"matrix entries out of range for GF({self.field.q})")
        object.__setattr__(self, "data", arr)
        arr.setflags(write=False)

    @classmethod
    def from_rows(cls, field: Field, rows) -> "MatrixGF":
        return cls(field, np.array(rows, dtype=np.int64).reshape(len(rows), -1))

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "MatrixGF":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: Field, n: int) -> "MatrixGF":
        return cls(field, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MatrixGF)
            and self.field == other.field
            and self.data.shape == other.data.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def take_columns(self, cols) -> "MatrixGF":
        return MatrixGF(self.field, self.data[:, list(cols)])

    def matmul(self, other: "MatrixGF") -> "MatrixGF":
        return MatrixGF(self.field, mat_mul(self.field, self.data, other.data))

    def transpose(self) -> "MatrixGF":
        return MatrixGF(self.field, self.data.T)


def mat_mul(field: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Matrix product over the field on raw int64 arrays."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.shape[-1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    if field.m == 1:
        return (A @ B) % field.p
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for i in range(A.shape[1]):
        out = field.add_vec(out, field.mul_vec(A[:, i][:, None], B[i][None, :]))
    return out


def vec_mat(field: Field, v, M: np.ndarray) -> np.ndarray:
    """Row vector times matrix over the field."""
    return mat_mul(field, np.asarray(v, dtype=np.int64).reshape(1, -1), M)[0]


def _rref_array(field: Field, M: np.ndarray):
    R = np.array(M, dtype=np.int64)
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if R[i, c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            R[[piv, r]] = R[[r, piv]]
        inv = field.inv(int(R[r, c]))
        if inv != 1:
            R[r] = field.mul_vec(R[r], np.int64(inv))
        for i in range(rows):
            if i != r and R[i, c] != 0:
                f = field.neg(int(R[i, c]))
                R[i] = field.add_vec(R[i], field.mul_vec(np.int64(f), R[r]))
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, r, pivots


def rref(M: MatrixGF):
    """Reduced row-echelon form.

    Returns (R, rank, pivot_cols); the row space of R equals that of M.
    """
    R, rank, pivots = _rref_array(M.field, M.data)
    return MatrixGF(M.field, R), rank, pivots


def rank(M: MatrixGF) -> int:
    return rref(M)[1]


def null_space(M: MatrixGF) -> MatrixGF:
    """Basis (as rows) of the right kernel {x : M x^T = 0}."""
    f = M.field
    R, rk, pivots = _rref_array(f, M.data)
    cols = M.cols
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for bi, fc in enumerate(free):
        basis[bi, fc] = 1
        for r, pc in enumerate(pivots):
            # x_pc = -R[r, fc] when x_fc = 1
            basis[bi, pc] = f.neg(int(R[r, fc]))
    return MatrixGF(f, basis)


def solve_erasures(H: MatrixGF, c_partial, erased) -> list[int]:
    """Complete a partially-erased vector to the unique consistent codeword.

    ``c_partial`` is a length-n sequence with ``None`` at erased positions;
    ``erased`` is the set of erased indices.  Requires the erased columns of H
    to be linearly independent, otherwise the pattern is uncorrectable.
    """
    f = H.field
    n = H.cols
    erased = sorted(set(erased))
    if any(not 0 <= e < n for e in erased):
        raise ValueError("erased index out of range")
    for i, v in enumerate(c_partial):
        if (v is None) != (i in set(erased)):
            raise ValueError("erasure marks disagree with erased index set")
    known = [i for i in range(n) if i not in set(erased)]
    # syndrome of the known part: s = -H_K c_K
    cK = np.array([c_partial[i] for i in known], dtype=np.int64)
    s = mat_mul(f, H.data[:, known], cK.reshape(-1, 1))[:, 0]
    s = np.array([f.neg(int(x)) for x in s], dtype=np.int64)
    A = H.data[:, erased]
    aug = np.concatenate([A, s.reshape(-1, 1)], axis=1)
    R, rk_aug, pivots = _rref_array(f, aug)
    rk_A = sum(1 for p in pivots if p < len(erased))
    if rk_A < len(erased) or rk_aug > rk_A:
        raise UncorrectableErasure(
            f"uncorrectable erasure pattern {erased}: dependent erased columns"
        )
    out = list(c_partial)
    for r, p in enumerate(pivots):
        out[erased[p]] = int(R[r, -1])
    return [int(v) for v in out]


# ---------------------------------------------------------------------------
# Text format: first line "q rows cols", then rows of encoded elements.
# ---------------------------------------------------------------------------


def matrix_to_text(M: MatrixGF) -> str:
    lines = [f"{M.field.q} {M.rows} {M.cols}"]
    for row in M.data:
        lines.append(" ".join(str(int(v)) for v in row))
    return "\n".join(lines) + "\n"


def matrix_from_text(text: str) -> MatrixGF:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    q, rows, cols = (int(t) for t in lines[0].split())
    f = field_from_size(q)
    data = [[int(t) for t in ln.split()] for ln in lines[1 : 1 + rows]]
    M = MatrixGF.from_rows(f, data)
    if M.rows != rows or M.cols != cols:
        raise ValueError("matrix text header disagrees with body")
    return M
