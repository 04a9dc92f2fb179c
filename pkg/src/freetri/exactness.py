"""Deciding exactness of candidate triangles.

A candidate triangle is exact when it is isomorphic to X2(n) + K with K
contractible.  Three routes are offered:

* ``decide_exact`` peels contractible summands off unit entries and checks
  the unit-free remainder; it returns a re-verifiable certificate.
* ``sigma_criterion`` evaluates sigma^3 on H_*(pi T); it is cross-validated
  against ``decide_exact`` and never used as a decision path.
* ``brute_force_exact`` enumerates GL triples; an oracle for tiny ranks.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from .linalg import (Matrix, column_space, image_log_size, invert, is_invertible,
                     matmul_codes, normal_form, nullspace, solve_linear)
from .triangle import (CandidateTriangle, Homotopy, InternalError, IsoTriple, conjugate,
                       direct_sum, direct_sum_homotopy, is_contracting, is_contractible,
                       standard_contractible, x2_triangle, zero_triangle)


class NotQuasiExactError(ValueError):
    pass


class OracleTooLargeError(ValueError):
    pass


ORACLE_LIMIT = 10 ** 7


# ---------------------------------------------------------------------------
# quasi-exactness

def is_quasi_exact(T: CandidateTriangle) -> bool:
    """A -f-> B -i-> C -q-> A -f-> B exact, decided by counting.

    im(g) is inside ker(h) already, so equality holds iff
    log|ker h| = 2 rank(domain h) - log|im h| equals log|im g|.
    """
    f, i, q = T.maps()
    a, b, c = T.ranks
    im_f, im_i, im_q = image_log_size(f), image_log_size(i), image_log_size(q)
    return (2 * b - im_i == im_f) and (2 * c - im_q == im_i) and (2 * a - im_f == im_q)


# ---------------------------------------------------------------------------
# homology of pi T and the connecting map sigma

@dataclass
class HomologyData:
    """H_*(pi T) at the positions A, B, C, with sigma: H_A -> H_B -> H_C -> H_A."""

    dims: tuple[int, int, int]
    sigma: tuple[Matrix, Matrix, Matrix]
    cycle_bases: tuple[Matrix, Matrix, Matrix]
    quasi_exact: bool

    def sigma_cubed(self) -> Matrix:
        s_ab, s_bc, s_ca = self.sigma
        return s_ca @ s_bc @ s_ab


class _Quotient:
    """Cycles Z modulo boundaries Bd over k, with a chosen complement basis."""

    def __init__(self, d_out: Matrix, d_in: Matrix):
        k = d_out.ring
        Z = nullspace(d_out)
        Bd = column_space(d_in)
        chosen = Bd
        basis_cols = []
        for j in range(Z.cols):
            trial = Matrix(k, np.concatenate([chosen.a, Z.a[:, j:j + 1]], axis=1))
            if normal_form(trial).r1 == trial.cols:
                chosen = trial
                basis_cols.append(j)
        self.field = k
        self.n_bd = Bd.cols
        self.basis = Matrix(k, Z.a[:, basis_cols])
        self.frame = chosen
        self.dim = len(basis_cols)
        self.d_out = d_out

    def coords(self, z: np.ndarray) -> np.ndarray:
        if self.d_out.rows and np.any(matmul_codes(self.field, self.d_out.a, z[:, None])):
            raise InternalError("connecting map produced a non-cycle")
        sol = solve_linear(self.frame, z)
        if sol.is_empty:
            raise InternalError("cycle not in the span of boundaries and homology basis")
        return sol.particular[self.n_bd:]


def homology_of_2T(T: CandidateTriangle) -> HomologyData:
    """Homology of pi T as a k-complex and the connecting isomorphism sigma.

    pi T has differentials residue(f), residue(i), residue(q) on k-coordinates.
    For a class [z] in H_A, sigma[z] = [half(f lift(z))], and likewise for i, q.
    """
    ring = T.ring
    k = ring.field
    f, i, q = T.maps()
    fb, ib, qb = f.residue(), i.residue(), q.residue()
    HA, HB, HC = _Quotient(fb, qb), _Quotient(ib, fb), _Quotient(qb, ib)

    def connecting(d: Matrix, src: _Quotient, dst: _Quotient) -> Matrix:
        cols = []
        for j in range(src.dim):
            z = src.basis.a[:, j]
            image = ring.half(matmul_codes(ring, d.a, ring.lift(z)[:, None])[:, 0])
            c = dst.coords(image)
            # same class through a different representative z + boundary
            if src.n_bd:
                z2 = k.add(z, np.bitwise_xor.reduce(src.frame.a[:, :src.n_bd], axis=1))
                image2 = ring.half(matmul_codes(ring, d.a, ring.lift(z2)[:, None])[:, 0])
                if not np.array_equal(dst.coords(image2), c):
                    raise InternalError("sigma depends on the chosen representative")
            cols.append(c)
        arr = np.stack(cols, axis=1) if cols else np.zeros((dst.dim, 0), dtype=np.int64)
        return Matrix(k, arr)

    s_ab = connecting(f, HA, HB)
    s_bc = connecting(i, HB, HC)
    s_ca = connecting(q, HC, HA)
    return HomologyData((HA.dim, HB.dim, HC.dim), (s_ab, s_bc, s_ca),
                        (HA.basis, HB.basis, HC.basis), is_quasi_exact(T))


def sigma_criterion(T: CandidateTriangle) -> bool:
    """Whether sigma^3 is the identity on H_A(pi T); needs T quasi-exact."""
    if not is_quasi_exact(T):
        raise NotQuasiExactError("sigma criterion needs a quasi-exact triangle")
    h = homology_of_2T(T)
    s3 = h.sigma_cubed()
    return s3 == Matrix.identity(s3.ring, h.dims[0])


# ---------------------------------------------------------------------------
# peeling decision

@dataclass
class ExactnessCertificate:
    """conjugate(T, iso) == x2_triangle(x2_rank) + contractible_part."""

    iso: IsoTriple
    x2_rank: int
    contractible_part: CandidateTriangle
    contracting_homotopy: Homotopy
    pieces: list = field(default_factory=list)

    def standard_form(self) -> CandidateTriangle:
        ring = self.contractible_part.ring
        return direct_sum(x2_triangle(ring, self.x2_rank), self.contractible_part)

    def verify(self, T: CandidateTriangle) -> bool:
        return (self.iso.is_valid()
                and conjugate(T, self.iso) == self.standard_form()
                and is_contracting(self.contractible_part, self.contracting_homotopy))


def _perm_to_end(ring, n: int, r: int) -> Matrix:
    """Permutation sending the first r coordinates of R^n to the last r."""
    order = list(range(r, n)) + list(range(r))
    P = np.zeros((n, n), dtype=np.int64)
    P[np.arange(n), order] = 1
    return Matrix(ring, P)


def _block_iso(ring, head: tuple[int, int, int], iso: IsoTriple) -> IsoTriple:
    from .linalg import block_diag
    return IsoTriple(*(block_diag(ring, Matrix.identity(ring, h), m)
                       for h, m in zip(head, iso.components())))


def _peel(T: CandidateTriangle):
    """Return (iso, n, pieces) with conjugate(T, iso) = X2(n) + pieces, or None."""
    ring = T.ring
    a, b, c = T.ranks
    I = Matrix.identity
    for kind in ("f", "i", "q"):
        g = getattr(T, kind)
        if not g.has_unit_entry():
            continue
        nf = normal_form(g)
        r = nf.r1
        # basis change putting g in normal form; a unit block of size r splits off
        if kind == "f":
            first = IsoTriple(nf.Q, nf.P_inv, I(ring, c))
            head = (r, r, 0)
        elif kind == "i":
            first = IsoTriple(I(ring, a), nf.Q, nf.P_inv)
            head = (0, r, r)
        else:
            first = IsoTriple(nf.P_inv, I(ring, b), nf.Q)
            head = (r, 0, r)
        S = conjugate(T, first)
        rest = S.sub(*(list(range(h, n)) for h, n in zip(head, (a, b, c))))
        found = _peel(rest)
        if found is None:
            return None
        iso1, n, pieces = found
        move = IsoTriple(*(_perm_to_end(ring, n_, h) for n_, h in zip((a, b, c), head)))
        iso = first.then(_block_iso(ring, head, iso1)).then(move)
        return iso, n, pieces + [(kind, r)]
    # no unit entries: f, i, q are pi times lifts of u, v, w
    if not (a == b == c):
        return None
    u, v, w = T.f.half(), T.i.half(), T.q.half()
    if not (is_invertible(u) and is_invertible(v) and is_invertible(w)):
        return None
    vu = v @ u
    if w @ vu != Matrix.identity(ring.field, a):
        return None
    iso = IsoTriple(I(ring, a), invert(u).lift_to(ring), invert(vu).lift_to(ring))
    return iso, a, []


def decide_exact(T: CandidateTriangle) -> ExactnessCertificate | None:
    """Certificate that T is exact, or None if it is not."""
    if not is_quasi_exact(T):
        return None
    found = _peel(T)
    if found is None:
        return None
    iso, n, pieces = found
    ring = T.ring
    parts = [standard_contractible(ring, kind, r) for kind, r in pieces]
    if parts:
        K = direct_sum(*(p[0] for p in parts))
        H = direct_sum_homotopy(ring, *(p[1] for p in parts))
    else:
        K = zero_triangle(ring)
        H = Homotopy(Matrix.zeros(ring, 0, 0), Matrix.zeros(ring, 0, 0), Matrix.zeros(ring, 0, 0))
    cert = ExactnessCertificate(iso, n, K, H, pieces)
    if not cert.verify(T):
        raise InternalError("exactness certificate failed verification")
    return cert


def is_exact(T: CandidateTriangle) -> bool:
    return decide_exact(T) is not None


# ---------------------------------------------------------------------------
# brute-force oracle

def gl_order(ring, r: int) -> int:
    q = ring.q
    out = 1
    for j in range(r):
        out *= q ** r - q ** j
    return out * q ** (r * r)


@functools.lru_cache(maxsize=None)
def _gl_field(field, r: int):
    """All invertible r x r matrices over k and their inverses."""
    mats, invs = [], []
    for codes in np.ndindex(*([field.size] * (r * r))):
        M = Matrix(field, np.array(codes, dtype=np.int64).reshape(r, r))
        if normal_form(M).r1 == r:
            mats.append(M.a)
            invs.append(invert(M).a)
    return np.array(mats, dtype=np.int64).reshape(-1, r, r), \
        np.array(invs, dtype=np.int64).reshape(-1, r, r)


@functools.lru_cache(maxsize=None)
def general_linear_group(ring, r: int) -> tuple[np.ndarray, np.ndarray]:
    """Every element of GL_r(R) and its inverse, as arrays of shape (N, r, r).

    Each invertible matrix is lift(G) + pi*lift(N) with G in GL_r(k); its
    inverse is X (2 - M X) for X = lift(G^-1).
    """
    G, Ginv = _gl_field(ring.field, r)
    if r == 0:
        z = np.zeros((1, 0, 0), dtype=np.int64)
        return z, z
    Ns = np.array(list(np.ndindex(*([ring.q] * (r * r)))), dtype=np.int64).reshape(-1, r, r)
    M = (G[:, None] | (Ns[None] << ring.m)).reshape(-1, r, r)
    X = np.broadcast_to(Ginv[:, None], (G.shape[0], Ns.shape[0], r, r)).reshape(-1, r, r)
    two = Matrix.scalar(ring, r, ring.from_int(2)).a
    MX = matmul_codes(ring, M, X)
    inv = matmul_codes(ring, X, ring.sub(two, MX))
    return M, inv


def _block_ok(ring, arr: np.ndarray, d: int) -> np.ndarray:
    """Mask over the batch: top-left d x d is pi*I and the off-diagonal blocks vanish."""
    top = arr[..., :d, :d]
    target = np.eye(d, dtype=np.int64) * ring.pi
    ok = np.all(top == target, axis=(-2, -1))
    ok &= np.all(arr[..., :d, d:] == 0, axis=(-2, -1))
    ok &= np.all(arr[..., d:, :d] == 0, axis=(-2, -1))
    return ok


def brute_force_exact(T: CandidateTriangle, limit: int = ORACLE_LIMIT) -> bool:
    """Exhaustive search for a GL triple conjugating T into X2(d) + K, K contractible.

    d is dim H_A(pi T).  Coordinate splittings other than "first d" are covered
    because the enumeration includes all permutation matrices.
    """
    ring = T.ring
    a, b, c = T.ranks
    size = gl_order(ring, a) * gl_order(ring, b) * gl_order(ring, c)
    if size > limit:
        raise OracleTooLargeError(f"|GL| triple count {size} exceeds {limit}")
    if not is_quasi_exact(T):
        return False
    d = homology_of_2T(T).dims[0]
    if d > min(a, b, c):
        return False
    if d == 0:
        # the block condition is empty, so every K is a conjugate of T
        return is_contractible(T) is not None
    GA, GAi = general_linear_group(ring, a)
    GB, GBi = general_linear_group(ring, b)
    GC, GCi = general_linear_group(ring, c)
    f, i, q = T.f.a, T.i.a, T.q.a
    F = matmul_codes(ring, matmul_codes(ring, GB[:, None], f), GAi[None, :])  # [beta, alpha]
    I = matmul_codes(ring, matmul_codes(ring, GC[:, None], i), GBi[None, :])  # [gamma, beta]
    Q = matmul_codes(ring, matmul_codes(ring, GA[:, None], q), GCi[None, :])  # [alpha, gamma]
    Fok, Iok, Qok = _block_ok(ring, F, d), _block_ok(ring, I, d), _block_ok(ring, Q, d)
    mask = Fok.T[:, :, None] & Iok.T[None, :, :] & Qok[:, None, :]  # [alpha, beta, gamma]
    ia, ib, ic = np.nonzero(mask)
    if ia.size == 0:
        return False
    keys = np.concatenate([F[ib, ia][:, d:, d:].reshape(ia.size, -1),
                           I[ic, ib][:, d:, d:].reshape(ia.size, -1),
                           Q[ia, ic][:, d:, d:].reshape(ia.size, -1)], axis=1)
    if keys.shape[1] == 0:
        first = np.array([0])
    else:
        _, first = np.unique(keys, axis=0, return_index=True)
    for idx in sorted(first):
        K = CandidateTriangle(Matrix(ring, F[ib[idx], ia[idx]][d:, d:]),
                              Matrix(ring, I[ic[idx], ib[idx]][d:, d:]),
                              Matrix(ring, Q[ia[idx], ic[idx]][d:, d:]))
        if is_contractible(K) is not None:
            return True
    return False
