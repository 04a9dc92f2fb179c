"""Seeded random objects for property tests and axiom campaigns.

Every generator takes a ``numpy.random.Generator`` and is deterministic in it.
"""

from __future__ import annotations

import numpy as np

from .linalg import Matrix, bmat, is_invertible, kron, solve_linear
from .triangle import (CandidateTriangle, CandidateError, Homotopy, IsoTriple, TriangleMorphism,
                       cone_of_identity, conjugate, direct_sum, trivial_triangle, twisted_x2,
                       x2_triangle)

# candidate spaces up to this many (f, i, q) triples are sampled uniformly by rejection
UNIFORM_LIMIT = 1 << 12


def random_matrix(ring, rng, rows: int, cols: int) -> Matrix:
    return Matrix(ring, rng.integers(0, ring.size, size=(rows, cols)))


def random_pi_matrix(ring, rng, rows: int, cols: int) -> Matrix:
    return Matrix(ring, rng.integers(0, ring.q, size=(rows, cols)) << ring.m)


def random_invertible(ring, rng, n: int) -> Matrix:
    while True:
        M = random_matrix(ring, rng, n, n)
        if is_invertible(M):
            return M


def random_field_invertible(field, rng, n: int) -> Matrix:
    while True:
        M = Matrix(field, rng.integers(0, field.size, size=(n, n)))
        if is_invertible(M):
            return M


def random_iso(ring, rng, ranks) -> IsoTriple:
    return IsoTriple(*(random_invertible(ring, rng, r) for r in ranks))


def _sample_kernel(ring, rng, system: Matrix) -> np.ndarray:
    sol = solve_linear(system, np.zeros(system.rows, dtype=np.int64))
    return sol.sample(rng)


def _random_ranks(rng, bound: int):
    return tuple(int(r) for r in rng.integers(0, bound + 1, size=3))


def random_triangle(ring, rng, rank_bound: int) -> CandidateTriangle:
    """A random candidate triangle with every rank at most rank_bound.

    Small candidate spaces are sampled uniformly by rejection.  Otherwise f is
    drawn (uniform, pi-multiple, or low rank), then i uniformly from
    {i : i f = 0} and q uniformly from {q : q i = 0, f q = 0}.
    """
    a, b, c = _random_ranks(rng, rank_bound)
    entries = a * b + b * c + c * a
    if ring.size ** entries <= UNIFORM_LIMIT:
        while True:
            try:
                return CandidateTriangle(random_matrix(ring, rng, b, a),
                                         random_matrix(ring, rng, c, b),
                                         random_matrix(ring, rng, a, c))
            except CandidateError:
                continue
    mode = rng.integers(0, 3)
    if mode == 0:
        f = random_matrix(ring, rng, b, a)
    elif mode == 1:
        f = random_pi_matrix(ring, rng, b, a)
    else:
        r = int(rng.integers(0, min(a, b) + 1))
        f = random_matrix(ring, rng, b, r) @ random_matrix(ring, rng, r, a)
    I = lambda n: Matrix.identity(ring, n)  # noqa: E731
    i_vec = _sample_kernel(ring, rng, kron(I(c), f.T))
    i = Matrix(ring, i_vec.reshape(c, b))
    sys_q = bmat(ring, [[kron(I(a), i.T)], [kron(f, I(c))]])
    q = Matrix(ring, _sample_kernel(ring, rng, sys_q).reshape(a, c))
    return CandidateTriangle(f, i, q)


def random_contractible(ring, rng, rank_bound: int) -> CandidateTriangle:
    """Cone of the identity on a random triangle; each rank at most rank_bound."""
    half = rank_bound // 2
    S = random_triangle(ring, rng, half)
    return cone_of_identity(S)


def random_exact_triangle(ring, rng, rank_bound: int) -> CandidateTriangle:
    """conjugate(X2(n) + cone_of_identity(S), random iso) within rank_bound."""
    n = int(rng.integers(0, rank_bound + 1))
    K = random_contractible(ring, rng, rank_bound - n)
    T = direct_sum(x2_triangle(ring, n), K)
    return conjugate(T, random_iso(ring, rng, T.ranks))


def random_quasi_exact(ring, rng, rank_bound: int) -> CandidateTriangle:
    """Twisted X2 block (pi u, pi v, pi w) plus a contractible, randomly conjugated.

    sigma^3 on the result is w v u, so both outcomes of the sigma test occur.
    """
    n = int(rng.integers(0, rank_bound + 1))
    k = ring.field
    u, v, w = (random_field_invertible(k, rng, n) for _ in range(3))
    if rng.integers(0, 2):
        w = _inverse_field(v @ u)
    K = random_contractible(ring, rng, rank_bound - n)
    T = direct_sum(twisted_x2(ring, u, v, w), K)
    return conjugate(T, random_iso(ring, rng, T.ranks))


def _inverse_field(M: Matrix) -> Matrix:
    from .linalg import invert
    return invert(M)


def random_morphism(S: CandidateTriangle, T: CandidateTriangle, rng) -> TriangleMorphism:
    """Uniform random morphism S -> T, drawn from the solution module of the commutation equations."""
    ring = S.ring
    (a, b, c), (a2, b2, c2) = S.ranks, T.ranks
    I = lambda n: Matrix.identity(ring, n)  # noqa: E731
    Z = Matrix.zeros
    # unknowns vec(alpha), vec(beta), vec(gamma)
    system = bmat(ring, [
        [kron(T.f, I(a)), -kron(I(b2), S.f.T), Z(ring, b2 * a, c2 * c)],
        [Z(ring, c2 * b, a2 * a), kron(T.i, I(b)), -kron(I(c2), S.i.T)],
        [-kron(I(a2), S.q.T), Z(ring, a2 * c, b2 * b), kron(T.q, I(c))],
    ])
    x = _sample_kernel(ring, rng, system) if system.cols else np.zeros(0, dtype=np.int64)
    n1, n2 = a2 * a, b2 * b
    return TriangleMorphism(S, T, Matrix(ring, x[:n1].reshape(a2, a)),
                            Matrix(ring, x[n1:n1 + n2].reshape(b2, b)),
                            Matrix(ring, x[n1 + n2:].reshape(c2, c)))


def random_homotopic_pair(S: CandidateTriangle, T: CandidateTriangle, rng):
    """(m1, m2, H): a random morphism m1, an arbitrary H, and m2 = m1 + (the null-homotopic map of H)."""
    ring = S.ring
    (a, b, c), (a2, b2, c2) = S.ranks, T.ranks
    m1 = random_morphism(S, T, rng)
    H = Homotopy(random_matrix(ring, rng, a2, b), random_matrix(ring, rng, b2, c),
                 random_matrix(ring, rng, c2, a))
    m2 = TriangleMorphism(S, T,
                          m1.alpha + H.theta @ S.f + T.q @ H.psi,
                          m1.beta + H.phi @ S.i + T.f @ H.theta,
                          m1.gamma + H.psi @ S.q + T.i @ H.phi)
    return m1, m2, H


def random_commuting_square(S: CandidateTriangle, T: CandidateTriangle, rng):
    """Uniform random (alpha, beta) with f' alpha = beta f."""
    ring = S.ring
    (a, b, c), (a2, b2, c2) = S.ranks, T.ranks
    I = lambda n: Matrix.identity(ring, n)  # noqa: E731
    system = bmat(ring, [[kron(T.f, I(a)), -kron(I(b2), S.f.T)]])
    n1 = a2 * a
    if system.cols == 0:
        x = np.zeros(0, dtype=np.int64)
    elif system.rows == 0:
        x = rng.integers(0, ring.size, size=system.cols)
    else:
        x = _sample_kernel(ring, rng, system)
    return Matrix(ring, x[:n1].reshape(a2, a)), Matrix(ring, x[n1:].reshape(b2, b))


def generators(kind: str, rng, rank_bound: int, ring, **kw):
    """Dispatch by kind: triangle, exact_triangle, quasi_exact, trivial, contractible,
    morphism (needs source=, target=), commuting_square."""
    if kind == "triangle":
        return random_triangle(ring, rng, rank_bound)
    if kind == "exact_triangle":
        return random_exact_triangle(ring, rng, rank_bound)
    if kind == "quasi_exact":
        return random_quasi_exact(ring, rng, rank_bound)
    if kind == "trivial":
        return trivial_triangle(ring, int(rng.integers(0, rank_bound + 1)))
    if kind == "contractible":
        return random_contractible(ring, rng, rank_bound)
    if kind == "morphism":
        return random_morphism(kw["source"], kw["target"], rng)
    if kind == "commuting_square":
        S = kw.get("source") or random_exact_triangle(ring, rng, rank_bound)
        T = kw.get("target") or random_exact_triangle(ring, rng, rank_bound)
        alpha, beta = random_commuting_square(S, T, rng)
        return S, T, alpha, beta
    raise ValueError(f"unknown generator kind {kind!r}")
