"""Dense matrices over R or its residue field k.

A ``Matrix`` wraps a 2-d numpy array of element codes together with its
carrier (a ``Ring`` or ``ResidueField``).  Zero-sized matrices are allowed
everywhere since rank-0 objects show up as triangle components.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ring import RingMismatchError


class ShapeError(ValueError):
    pass


class NotInvertibleError(ValueError):
    pass


def matmul_codes(ring, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Batched product of code arrays with shapes (..., n, k) and (..., k, p)."""
    n, k = x.shape[-2:]
    if y.shape[-2] != k:
        raise ShapeError(f"cannot multiply {x.shape} by {y.shape}")
    p = y.shape[-1]
    batch = np.broadcast_shapes(x.shape[:-2], y.shape[:-2])
    if k == 0:
        return np.zeros(batch + (n, p), dtype=np.int64)
    acc = ring.mul(x[..., :, 0, None], y[..., None, 0, :])
    for t in range(1, k):
        acc = ring.add(acc, ring.mul(x[..., :, t, None], y[..., None, t, :]))
    return np.broadcast_to(acc, batch + (n, p))


class Matrix:
    __slots__ = ("ring", "a")

    def __init__(self, ring, a):
        a = np.asarray(a, dtype=np.int64)
        if a.ndim != 2:
            raise ShapeError(f"matrix data must be 2-d, got shape {a.shape}")
        self.ring = ring
        self.a = a

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zeros(cls, ring, rows: int, cols: int) -> "Matrix":
        return cls(ring, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, ring, n: int) -> "Matrix":
        return cls(ring, np.eye(n, dtype=np.int64))

    @classmethod
    def scalar(cls, ring, n: int, value: int) -> "Matrix":
        return cls(ring, np.eye(n, dtype=np.int64) * int(value))

    @classmethod
    def from_rows(cls, ring, rows, cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if not rows:
            return cls.zeros(ring, 0, cols or 0)
        return cls(ring, np.array(rows, dtype=np.int64).reshape(len(rows), -1))

    # -- basics ----------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    def _check(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.ring is not self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        return Matrix(self.ring, matmul_codes(self.ring, self.a, other.a))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return Matrix(self.ring, self.ring.add(self.a, other.a))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix(self.ring, self.ring.sub(self.a, other.a))

    def __neg__(self) -> "Matrix":
        return Matrix(self.ring, self.ring.neg(self.a))

    def scale(self, c: int) -> "Matrix":
        """Multiply every entry by the element code c."""
        return Matrix(self.ring, self.ring.mul(np.int64(c), self.a))

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.ring is other.ring and self.shape == other.shape
                and np.array_equal(self.a, other.a))

    def __hash__(self):
        return hash((id(self.ring), self.shape, self.a.tobytes()))

    def __repr__(self):
        return f"Matrix({self.a.tolist()})"

    def __getitem__(self, idx) -> "Matrix":
        out = self.a[idx]
        if out.ndim != 2:
            raise ShapeError("indexing must keep two dimensions; use slices")
        return Matrix(self.ring, out)

    @property
    def T(self) -> "Matrix":
        return Matrix(self.ring, self.a.T.copy())

    def is_zero(self) -> bool:
        return not self.a.any()

    def has_unit_entry(self) -> bool:
        return bool(np.any(self.ring.is_unit(self.a)))

    def key(self) -> bytes:
        return np.array(self.shape, dtype=np.int64).tobytes() + self.a.tobytes()

    # -- passage between R and k ---------------------------------------------

    def residue(self) -> "Matrix":
        return Matrix(self.ring.field, self.ring.residue(self.a))

    def lift_to(self, ring) -> "Matrix":
        """Coefficient-wise lift of a k-matrix into R."""
        return Matrix(ring, ring.lift(self.a))

    def times_pi(self) -> "Matrix":
        return Matrix(self.ring, self.ring.times_pi(self.a))

    def half(self) -> "Matrix":
        """k-matrix c with self = pi * lift(c); needs all entries in pi R."""
        return Matrix(self.ring.field, self.ring.half(self.a))


def block_diag(ring, *mats: Matrix) -> Matrix:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for m in mats:
        out[r:r + m.rows, c:c + m.cols] = m.a
        r += m.rows
        c += m.cols
    return Matrix(ring, out)


def bmat(ring, grid) -> Matrix:
    """Assemble a block matrix from a list of rows of Matrices."""
    rows = [np.concatenate([m.a for m in row], axis=1) for row in grid]
    return Matrix(ring, np.concatenate(rows, axis=0))


def kron(x: Matrix, y: Matrix) -> Matrix:
    ring = x.ring
    (m, n), (p, q) = x.shape, y.shape
    out = ring.mul(x.a[:, None, :, None], y.a[None, :, None, :])
    return Matrix(ring, np.asarray(out).reshape(m * p, n * q))


# ---------------------------------------------------------------------------
# normal form

@dataclass
class NormalForm:
    """M = P @ D @ Q with D = diag(1^r1, pi^r2, 0, ...)."""

    P: Matrix
    D: Matrix
    Q: Matrix
    r1: int
    r2: int
    P_inv: Matrix = field(repr=False)
    Q_inv: Matrix = field(repr=False)

    @property
    def rank(self) -> int:
        return self.r1 + self.r2


def normal_form(M: Matrix) -> NormalForm:
    """Diagonalize M by invertible row and column operations.

    Unit pivots are taken first, in row-major scan order.  Over R the leftover
    block lies in pi R and is diagonalized with pi-pivots: an entry pi*lift(d)
    is cleared against the pivot pi*lift(c) with multiplier lift(d/c).
    """
    ring = M.ring
    n, c = M.shape
    A = M.a.copy()
    P = np.eye(n, dtype=np.int64)
    Pinv = P.copy()
    Q = np.eye(c, dtype=np.int64)
    Qinv = Q.copy()

    def matvec(X, v):
        return matmul_codes(ring, X, v[:, None])[:, 0]

    def pivot_step(t, r, s, scale_by, quotient):
        # bring (r, s) to (t, t)
        if r != t:
            A[[t, r]] = A[[r, t]]
            Pinv[[t, r]] = Pinv[[r, t]]
            P[:, [t, r]] = P[:, [r, t]]
        if s != t:
            A[:, [t, s]] = A[:, [s, t]]
            Qinv[:, [t, s]] = Qinv[:, [s, t]]
            Q[[t, s]] = Q[[s, t]]
        # row t *= scale_by
        A[t] = ring.mul(scale_by, A[t])
        Pinv[t] = ring.mul(scale_by, Pinv[t])
        P[:, t] = ring.mul(P[:, t], ring.inv(scale_by))
        # clear column t: row_r += mult_r * row_t
        mult = np.array(ring.neg(quotient(A[:, t])), dtype=np.int64)
        mult[t] = 0
        if mult.any():
            A[:] = ring.add(A, ring.mul(mult[:, None], A[t][None, :]))
            Pinv[:] = ring.add(Pinv, ring.mul(mult[:, None], Pinv[t][None, :]))
            P[:, t] = ring.sub(P[:, t], matvec(P, mult))
        # clear row t: col_j += mult_j * col_t
        mult = np.array(ring.neg(quotient(A[t, :])), dtype=np.int64)
        mult[t] = 0
        if mult.any():
            A[:] = ring.add(A, ring.mul(A[:, t][:, None], mult[None, :]))
            Qinv[:] = ring.add(Qinv, ring.mul(Qinv[:, t][:, None], mult[None, :]))
            Q[t] = ring.sub(Q[t], matvec(Q.T, mult))

    t = 0
    while t < min(n, c):
        hits = np.flatnonzero(ring.is_unit(A[t:, t:]))
        if hits.size == 0:
            break
        r, s = divmod(int(hits[0]), c - t)
        pivot_step(t, r + t, s + t, ring.inv(int(A[r + t, s + t])), lambda col: col)
        t += 1
    r1 = t
    if not ring.is_field:
        while t < min(n, c):
            hits = np.flatnonzero(A[t:, t:])
            if hits.size == 0:
                break
            r, s = divmod(int(hits[0]), c - t)
            h = ring.half(int(A[r + t, s + t]))
            pivot_step(t, r + t, s + t, ring.lift(ring.field.inv(h)), ring.half)
            t += 1
    r2 = t - r1
    return NormalForm(Matrix(ring, P), Matrix(ring, A), Matrix(ring, Q), r1, r2,
                      Matrix(ring, Pinv), Matrix(ring, Qinv))


def rank_signature(M: Matrix) -> tuple[int, int]:
    nf = normal_form(M)
    return nf.r1, nf.r2


def image_log_size(M: Matrix) -> int:
    """log_{|k|} of |image(M)| = 2*r1 + r2."""
    r1, r2 = rank_signature(M)
    return 2 * r1 + r2


def is_invertible(M: Matrix) -> bool:
    if M.rows != M.cols:
        return False
    R = M if M.ring.is_field else M.residue()
    return normal_form(R).r1 == M.rows


def invert(M: Matrix) -> Matrix:
    if M.rows != M.cols:
        raise ShapeError(f"cannot invert non-square {M.shape} matrix")
    nf = normal_form(M)
    if nf.r1 != M.rows:
        raise NotInvertibleError("matrix is singular")
    # M = P I Q  =>  M^-1 = Q^-1 P^-1
    return nf.Q_inv @ nf.P_inv


# ---------------------------------------------------------------------------
# solving

@dataclass
class SolutionSet:
    """All x with A x = b: ``particular + R-span(kernel)``; particular is None if empty."""

    A: Matrix
    b: np.ndarray
    particular: np.ndarray | None
    kernel: list

    def __bool__(self):
        return self.particular is not None

    @property
    def is_empty(self) -> bool:
        return self.particular is None

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=np.int64)
        lhs = matmul_codes(self.A.ring, self.A.a, x[:, None])[:, 0]
        return bool(np.array_equal(lhs, self.b))

    def combine(self, coeffs) -> np.ndarray:
        ring = self.A.ring
        x = self.particular.copy()
        for c, g in zip(coeffs, self.kernel):
            x = ring.add(x, ring.mul(np.int64(c), g))
        return x

    def sample(self, rng) -> np.ndarray:
        """Uniform element of the solution set."""
        coeffs = rng.integers(0, self.A.ring.size, size=len(self.kernel))
        return self.combine(coeffs)

    def enumerate(self) -> set:
        """Every solution as a tuple; exponential, for tests at desk scale."""
        if self.is_empty:
            return set()
        ring = self.A.ring
        out = {tuple(self.particular.tolist())}
        for g in self.kernel:
            step = set(out)
            for x in out:
                xa = np.array(x, dtype=np.int64)
                for c in range(1, ring.size):
                    step.add(tuple(ring.add(xa, ring.mul(np.int64(c), g)).tolist()))
            out = step
        return out


def solve_linear(A: Matrix, b) -> SolutionSet:
    """Solve A x = b exactly through the normal form A = P D Q."""
    ring = A.ring
    b = np.asarray(b.a[:, 0] if isinstance(b, Matrix) else b, dtype=np.int64).reshape(-1)
    n, c = A.shape
    if b.shape[0] != n:
        raise ShapeError(f"right-hand side has length {b.shape[0]}, expected {n}")
    nf = normal_form(A)
    rhs = matmul_codes(ring, nf.P_inv.a, b[:, None])[:, 0]
    y = np.zeros(c, dtype=np.int64)
    gens = []
    for j in range(min(n, c)):
        if j < nf.r1:
            y[j] = rhs[j]
        elif j < nf.rank:
            if not ring.in_pi_ideal(rhs[j]):
                return SolutionSet(A, b, None, [])
            y[j] = ring.lift(ring.half(int(rhs[j])))
            g = np.zeros(c, dtype=np.int64)
            g[j] = ring.pi
            gens.append(g)
    if np.any(rhs[nf.rank:] != 0):
        return SolutionSet(A, b, None, [])
    for j in range(nf.rank, c):
        g = np.zeros(c, dtype=np.int64)
        g[j] = 1
        gens.append(g)
    Qi = nf.Q_inv.a
    x = matmul_codes(ring, Qi, y[:, None])[:, 0]
    kernel = [matmul_codes(ring, Qi, g[:, None])[:, 0] for g in gens]
    return SolutionSet(A, b, x, kernel)


def solve_matrix(A: Matrix, B: Matrix) -> Matrix | None:
    """A particular X with A X = B, solved column by column, or None."""
    cols = []
    for j in range(B.cols):
        sol = solve_linear(A, B.a[:, j])
        if sol.is_empty:
            return None
        cols.append(sol.particular)
    if not cols:
        return Matrix.zeros(A.ring, A.cols, 0)
    return Matrix(A.ring, np.stack(cols, axis=1))


# ---------------------------------------------------------------------------
# residue-field helpers

def field_rank(M: Matrix) -> int:
    return normal_form(M).r1


def nullspace(M: Matrix) -> Matrix:
    """Columns form a basis of {x : M x = 0} over a field."""
    nf = normal_form(M)
    return nf.Q_inv[:, nf.r1:]


def column_space(M: Matrix) -> Matrix:
    """Columns form a basis of the image of M over a field."""
    nf = normal_form(M)
    return nf.P[:, :nf.r1]


def field_solve(M: Matrix, b) -> np.ndarray | None:
    sol = solve_linear(M, b)
    return sol.particular


def residue_linalg(task: str, M: Matrix, b=None):
    """Dispatcher over k-matrices: reduce, rank, solve, nullspace."""
    if not M.ring.is_field:
        raise TypeError("residue_linalg expects a matrix over the residue field")
    if task == "reduce":
        return normal_form(M)
    if task == "rank":
        return field_rank(M)
    if task == "solve":
        return solve_linear(M, b)
    if task == "nullspace":
        return nullspace(M)
    raise ValueError(f"unknown task {task!r}")
