"""Matrices, normal forms and linear solving over R and k."""

import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from freetri import (Matrix, NotInvertibleError, ShapeError, invert, is_invertible, make_ring,
                     normal_form, residue_linalg, solve_linear)
from freetri.generators import random_invertible, random_matrix
from freetri.linalg import bmat, block_diag, image_log_size, kron, matmul_codes, solve_matrix


def M(ring, rows):
    return Matrix(ring, rows)


def diag_pattern(nf):
    D = nf.D.a
    ring = nf.D.ring
    expect = np.zeros_like(D)
    for t in range(nf.r1):
        expect[t, t] = 1
    for t in range(nf.r1, nf.rank):
        expect[t, t] = ring.pi
    return np.array_equal(D, expect)


# --- examples --------------------------------------------------------------------

def test_normal_form_examples(Z4):
    nf = normal_form(M(Z4, [[2]]))
    assert nf.P.a.tolist() == [[1]] and nf.D.a.tolist() == [[2]] and nf.Q.a.tolist() == [[1]]
    assert (nf.r1, nf.r2) == (0, 1)
    for rows, d, sig in (([[1, 2], [2, 0]], [[1, 0], [0, 0]], (1, 0)),
                         ([[2, 2], [2, 2]], [[2, 0], [0, 0]], (0, 1))):
        nf = normal_form(M(Z4, rows))
        assert nf.D.a.tolist() == d and (nf.r1, nf.r2) == sig
        assert nf.P @ nf.D @ nf.Q == M(Z4, rows)


def test_invertibility_examples(Z4):
    assert invert(M(Z4, [[3]])).a.tolist() == [[3]]
    assert not is_invertible(M(Z4, [[2]]))
    with pytest.raises(NotInvertibleError):
        invert(M(Z4, [[2]]))
    U = M(Z4, [[1, 2], [0, 1]])
    assert invert(U) == U and U @ U == Matrix.identity(Z4, 2)


def test_solve_examples(Z4):
    sol = solve_linear(M(Z4, [[2]]), [2])
    assert sol.particular.tolist() in ([1], [3])
    assert sol.enumerate() == {(1,), (3,)}
    assert solve_linear(M(Z4, [[2]]), [1]).is_empty
    sol = solve_linear(M(Z4, [[1, 2], [0, 2]]), [1, 2])
    assert sol.enumerate() == {(3, 1), (3, 3)}
    brute = {x for x in itertools.product(range(4), repeat=2)
             if ((x[0] + 2 * x[1]) % 4, (2 * x[1]) % 4) == (1, 2)}
    assert brute == {(3, 1), (3, 3)}
    with pytest.raises(ShapeError):
        solve_linear(M(Z4, [[1, 2]]), [1, 2])


def test_residue_linalg_examples():
    F2 = make_ring("zmod4").field
    assert residue_linalg("rank", M(F2, [[1, 1], [1, 1]])) == 1
    ns = residue_linalg("nullspace", M(F2, [[1, 1]]))
    assert ns.a.tolist() == [[1], [1]]
    F4 = make_ring("galois4:2").field
    omega = 0b10
    sol = residue_linalg("solve", M(F4, [[omega]]), [1])
    assert sol.particular.tolist() == [0b11]          # omega^-1 = omega + 1
    assert F4.mul(omega, 0b11) == 1
    with pytest.raises(TypeError):
        residue_linalg("rank", M(make_ring("zmod4"), [[1]]))


def test_zero_sized_matrices(ring):
    for r, c in ((0, 0), (0, 3), (3, 0)):
        Z = Matrix.zeros(ring, r, c)
        nf = normal_form(Z)
        assert nf.rank == 0 and nf.P @ nf.D @ nf.Q == Z
    assert (Matrix.zeros(ring, 2, 0) @ Matrix.zeros(ring, 0, 3)).is_zero()
    assert invert(Matrix.zeros(ring, 0, 0)).shape == (0, 0)
    assert solve_linear(Matrix.zeros(ring, 2, 0), [0, 0]).enumerate() == {()}
    assert solve_linear(Matrix.zeros(ring, 1, 0), [1]).is_empty


def test_matmul_against_integer_oracle(Z4, rng):
    for _ in range(50):
        a = rng.integers(0, 4, size=(3, 4))
        b = rng.integers(0, 4, size=(4, 2))
        assert np.array_equal(matmul_codes(Z4, a, b), (a @ b) % 4)


def test_block_helpers(Z4):
    A, B = M(Z4, [[1, 2]]), M(Z4, [[3], [1]])
    D = block_diag(Z4, A, B)
    assert D.a.tolist() == [[1, 2, 0], [0, 0, 3], [0, 0, 1]]
    G = bmat(Z4, [[A, Matrix.zeros(Z4, 1, 1)]])
    assert G.a.tolist() == [[1, 2, 0]]
    K = kron(M(Z4, [[1, 2]]), M(Z4, [[3]]))
    assert K.a.tolist() == [[3, 2]]
    with pytest.raises(ShapeError):
        A @ A


# --- seeded properties ---------------------------------------------------------------

@pytest.mark.parametrize("text", ["zmod4", "galois4:2", "dual2:1", "dual2:2"])
def test_normal_form_500_seeded(text):
    R = make_ring(text)
    rng = np.random.default_rng([11, len(text)])
    for _ in range(500):
        r, c = rng.integers(0, 6, size=2)
        A = random_matrix(R, rng, int(r), int(c))
        if rng.integers(0, 2):        # bias toward pi-heavy matrices
            A = Matrix(R, np.where(rng.integers(0, 3, size=A.shape) > 0, R.times_pi(A.a), A.a))
        nf = normal_form(A)
        assert nf.P @ nf.D @ nf.Q == A
        assert diag_pattern(nf)
        assert is_invertible(nf.P) and is_invertible(nf.Q)
        assert nf.P @ nf.P_inv == Matrix.identity(R, A.rows)
        assert nf.Q @ nf.Q_inv == Matrix.identity(R, A.cols)
        assert nf.r1 == residue_linalg("rank", A.residue())


@pytest.mark.parametrize("text", ["zmod4", "galois4:2", "dual2:2"])
def test_signature_invariant_under_equivalence(text):
    R = make_ring(text)
    rng = np.random.default_rng(3)
    for _ in range(100):
        r, c = (int(v) for v in rng.integers(1, 5, size=2))
        A = random_matrix(R, rng, r, c)
        B = random_invertible(R, rng, r) @ A @ random_invertible(R, rng, c)
        na, nb = normal_form(A), normal_form(B)
        assert (na.r1, na.r2) == (nb.r1, nb.r2)


def test_solve_agrees_with_enumeration_200(Z4):
    rng = np.random.default_rng(200)
    for _ in range(200):
        r, c = (int(v) for v in rng.integers(1, 4, size=2))
        A = random_matrix(Z4, rng, r, c)
        if rng.integers(0, 2):
            A = Matrix(Z4, (A.a * 2) % 4)
        b = rng.integers(0, 4, size=r)
        if rng.integers(0, 2):        # make solvable half the time
            b = (A.a @ rng.integers(0, 4, size=c)) % 4
        brute = {x for x in itertools.product(range(4), repeat=c)
                 if np.array_equal((A.a @ np.array(x)) % 4, b)}
        sol = solve_linear(A, b)
        assert sol.enumerate() == brute
        if not sol.is_empty:
            assert sol.contains(sol.particular)


def test_image_size_formula_by_enumeration(Z4):
    vecs = {c: np.array(list(itertools.product(range(4), repeat=c))) for c in (1, 2)}
    for r, c in itertools.product((1, 2), (1, 2)):
        for entries in itertools.product(range(4), repeat=r * c):
            A = np.array(entries).reshape(r, c)
            image = {tuple(row) for row in (vecs[c] @ A.T) % 4}
            nf = normal_form(Matrix(Z4, A))
            assert len(image) == Z4.q ** (2 * nf.r1 + nf.r2)
            assert image_log_size(Matrix(Z4, A)) == 2 * nf.r1 + nf.r2


def test_solve_matrix(ring, rng):
    for _ in range(30):
        A = random_invertible(ring, rng, 3)
        B = random_matrix(ring, rng, 3, 2)
        X = solve_matrix(A, B)
        assert A @ X == B


@given(st.lists(st.integers(0, 15), min_size=9, max_size=9))
def test_invert_is_two_sided(entries):
    R = make_ring("galois4:2")
    A = Matrix(R, np.array(entries).reshape(3, 3))
    if is_invertible(A):
        Ai = invert(A)
        assert A @ Ai == Matrix.identity(R, 3) == Ai @ A
    else:
        assert normal_form(A).r1 < 3
