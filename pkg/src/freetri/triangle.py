"""Candidate triangles in F(R) with identity translation functor.

A candidate triangle is A --f--> B --i--> C --q--> A with i f, q i and f q
all zero.  Objects are free modules, recorded by their ranks; morphisms are
matrices acting on column vectors, so f has shape (rB, rA).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (Matrix, ShapeError, block_diag, bmat, invert, is_invertible,
                     kron, solve_linear)
from .ring import RingMismatchError


class CandidateError(ValueError):
    """A composite that must vanish does not."""


class MorphismError(ValueError):
    pass


class HomotopyError(ValueError):
    pass


class InternalError(RuntimeError):
    """A constructed object failed its post-hoc verification."""


@dataclass(frozen=True, eq=False)
class CandidateTriangle:
    f: Matrix
    i: Matrix
    q: Matrix

    def __post_init__(self):
        f, i, q = self.f, self.i, self.q
        if not (f.ring is i.ring is q.ring):
            raise RingMismatchError("triangle maps live over different rings")
        rA, rB = f.cols, f.rows
        if i.cols != rB or q.rows != rA or q.cols != i.rows:
            raise ShapeError(f"incompatible shapes f{f.shape} i{i.shape} q{q.shape}")
        bad = [f"{name} = {comp.a.tolist()} != 0"
               for name, comp in (("i∘f", i @ f), ("q∘i", q @ i), ("f∘q", f @ q))
               if not comp.is_zero()]
        if bad:
            raise CandidateError("composite not zero: " + "; ".join(bad))

    @property
    def ring(self):
        return self.f.ring

    @property
    def ranks(self) -> tuple[int, int, int]:
        return self.f.cols, self.f.rows, self.i.rows

    @property
    def total_rank(self) -> int:
        return sum(self.ranks)

    def maps(self) -> tuple[Matrix, Matrix, Matrix]:
        return self.f, self.i, self.q

    def __eq__(self, other):
        if not isinstance(other, CandidateTriangle):
            return NotImplemented
        return self.f == other.f and self.i == other.i and self.q == other.q

    def __hash__(self):
        return hash((self.f, self.i, self.q))

    def key(self) -> bytes:
        return self.f.key() + self.i.key() + self.q.key()

    def __repr__(self):
        return (f"CandidateTriangle(ranks={self.ranks}, f={self.f.a.tolist()}, "
                f"i={self.i.a.tolist()}, q={self.q.a.tolist()})")

    def sub(self, a_idx, b_idx, c_idx) -> "CandidateTriangle":
        """Restriction to coordinate subsets; the caller guarantees it is a summand."""
        return CandidateTriangle(self.f[np.ix_(b_idx, a_idx)], self.i[np.ix_(c_idx, b_idx)],
                                 self.q[np.ix_(a_idx, c_idx)])


def make_triangle(ring, f, i, q) -> CandidateTriangle:
    """Build from nested lists of element codes (shapes inferred; empty lists allowed)."""
    def conv(m, rows, cols):
        if isinstance(m, Matrix):
            return m
        arr = np.array(m, dtype=np.int64).reshape(rows, cols)
        return Matrix(ring, arr)
    f_arr = np.array(f, dtype=np.int64)
    i_arr = np.array(i, dtype=np.int64)
    q_arr = np.array(q, dtype=np.int64)
    if f_arr.ndim == 2 and i_arr.ndim == 2 and q_arr.ndim == 2:
        return CandidateTriangle(Matrix(ring, f_arr), Matrix(ring, i_arr), Matrix(ring, q_arr))
    raise ShapeError("use Matrix objects for triangles with empty objects")


def zero_triangle(ring, ranks=(0, 0, 0)) -> CandidateTriangle:
    a, b, c = ranks
    return CandidateTriangle(Matrix.zeros(ring, b, a), Matrix.zeros(ring, c, b),
                             Matrix.zeros(ring, a, c))


def x2_triangle(ring, n: int) -> CandidateTriangle:
    """X --pi--> X --pi--> X --pi--> X on X = R^n."""
    p = Matrix.scalar(ring, n, ring.pi)
    return CandidateTriangle(p, p, p)


def twisted_x2(ring, u: Matrix, v: Matrix, w: Matrix) -> CandidateTriangle:
    """(pi*lift(u), pi*lift(v), pi*lift(w)) for square k-matrices u, v, w."""
    return CandidateTriangle(u.lift_to(ring).times_pi(), v.lift_to(ring).times_pi(),
                             w.lift_to(ring).times_pi())


def trivial_triangle(ring, n: int = 1) -> CandidateTriangle:
    """A --1--> A --> 0 --> A."""
    return CandidateTriangle(Matrix.identity(ring, n), Matrix.zeros(ring, 0, n),
                             Matrix.zeros(ring, n, 0))


def translate(T: CandidateTriangle) -> CandidateTriangle:
    return CandidateTriangle(-T.i, -T.q, -T.f)


def translate_back(T: CandidateTriangle) -> CandidateTriangle:
    """Inverse of ``translate``: C --(-q)--> A --(-f)--> B --(-i)--> C."""
    return CandidateTriangle(-T.q, -T.f, -T.i)


def direct_sum(*tris: CandidateTriangle) -> CandidateTriangle:
    if not tris:
        raise ValueError("direct_sum needs at least one triangle")
    ring = tris[0].ring
    if any(t.ring is not ring for t in tris):
        raise RingMismatchError("direct sum of triangles over different rings")
    return CandidateTriangle(block_diag(ring, *(t.f for t in tris)),
                             block_diag(ring, *(t.i for t in tris)),
                             block_diag(ring, *(t.q for t in tris)))


def dualize(T: CandidateTriangle) -> CandidateTriangle:
    """Hom_R(-, R): objects (A*, C*, B*) with maps (q^T, i^T, f^T)."""
    return CandidateTriangle(T.q.T, T.i.T, T.f.T)


# ---------------------------------------------------------------------------
# morphisms

@dataclass(frozen=True, eq=False)
class TriangleMorphism:
    source: CandidateTriangle
    target: CandidateTriangle
    alpha: Matrix
    beta: Matrix
    gamma: Matrix

    def __post_init__(self):
        problem = morphism_defect(self.source, self.target, self.alpha, self.beta, self.gamma)
        if problem:
            raise MorphismError(problem)

    def __eq__(self, other):
        if not isinstance(other, TriangleMorphism):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.alpha == other.alpha and self.beta == other.beta
                and self.gamma == other.gamma)

    def __hash__(self):
        return hash((self.alpha, self.beta, self.gamma))

    def components(self):
        return self.alpha, self.beta, self.gamma


def morphism_defect(S, T, alpha, beta, gamma) -> str | None:
    """None if (alpha, beta, gamma): S -> T commutes, else a description."""
    (a, b, c), (a2, b2, c2) = S.ranks, T.ranks
    for name, m, shape in (("alpha", alpha, (a2, a)), ("beta", beta, (b2, b)),
                           ("gamma", gamma, (c2, c))):
        if m.shape != shape:
            return f"{name} has shape {m.shape}, expected {shape}"
    if T.f @ alpha != beta @ S.f:
        return "f'·alpha != beta·f"
    if T.i @ beta != gamma @ S.i:
        return "i'·beta != gamma·i"
    if T.q @ gamma != alpha @ S.q:
        return "q'·gamma != alpha·q"
    return None


def identity_morphism(T: CandidateTriangle) -> TriangleMorphism:
    ring = T.ring
    a, b, c = T.ranks
    return TriangleMorphism(T, T, Matrix.identity(ring, a), Matrix.identity(ring, b),
                            Matrix.identity(ring, c))


def zero_morphism(S: CandidateTriangle, T: CandidateTriangle) -> TriangleMorphism:
    ring = S.ring
    (a, b, c), (a2, b2, c2) = S.ranks, T.ranks
    return TriangleMorphism(S, T, Matrix.zeros(ring, a2, a), Matrix.zeros(ring, b2, b),
                            Matrix.zeros(ring, c2, c))


def mapping_cone(m: TriangleMorphism) -> CandidateTriangle:
    """Cone on B+A', C+B', A+C' with maps (-i 0; beta f'), (-q 0; gamma i'), (-f 0; alpha q')."""
    S, T = m.source, m.target
    ring = S.ring
    (a, b, c), (a2, b2, c2) = S.ranks, T.ranks
    Z = Matrix.zeros
    f = bmat(ring, [[-S.i, Z(ring, c, a2)], [m.beta, T.f]])
    i = bmat(ring, [[-S.q, Z(ring, a, b2)], [m.gamma, T.i]])
    q = bmat(ring, [[-S.f, Z(ring, b, c2)], [m.alpha, T.q]])
    return CandidateTriangle(f, i, q)


def cone_of_identity(T: CandidateTriangle) -> CandidateTriangle:
    return mapping_cone(identity_morphism(T))


# ---------------------------------------------------------------------------
# homotopies

@dataclass(frozen=True)
class Homotopy:
    """theta: B -> A', phi: C -> B', psi: A -> C'."""

    theta: Matrix
    phi: Matrix
    psi: Matrix


def is_homotopy(m1: TriangleMorphism, m2: TriangleMorphism, H: Homotopy) -> bool:
    S, T = m1.source, m1.target
    try:
        return (m2.beta - m1.beta == H.phi @ S.i + T.f @ H.theta
                and m2.gamma - m1.gamma == H.psi @ S.q + T.i @ H.phi
                and m2.alpha - m1.alpha == H.theta @ S.f + T.q @ H.psi)
    except (ShapeError, RingMismatchError):
        return False


def is_contracting(T: CandidateTriangle, H: Homotopy) -> bool:
    return is_homotopy(zero_morphism(T, T), identity_morphism(T), H)


def find_homotopy(m1: TriangleMorphism, m2: TriangleMorphism) -> Homotopy | None:
    """Solve the three homotopy equations for (theta, phi, psi) as one linear system.

    Unknowns are the entries of theta, phi, psi in row-major order; the
    particular solution of the normal-form back substitution is returned.
    """
    S, T = m1.source, m1.target
    if m2.source != S or m2.target != T:
        raise ShapeError("homotopy requires morphisms with the same source and target")
    ring = S.ring
    (a, b, c), (a2, b2, c2) = S.ranks, T.ranks
    I = lambda n: Matrix.identity(ring, n)  # noqa: E731
    Z = Matrix.zeros
    # vec(N X) = (N kron I) vec X ;  vec(X M) = (I kron M^T) vec X
    row1 = [kron(T.f, I(b)), kron(I(b2), S.i.T), Z(ring, b2 * b, c2 * a)]
    row2 = [Z(ring, c2 * c, a2 * b), kron(T.i, I(c)), kron(I(c2), S.q.T)]
    row3 = [kron(I(a2), S.f.T), Z(ring, a2 * a, b2 * c), kron(T.q, I(a))]
    system = bmat(ring, [row1, row2, row3])
    rhs = np.concatenate([(m2.beta - m1.beta).a.reshape(-1),
                          (m2.gamma - m1.gamma).a.reshape(-1),
                          (m2.alpha - m1.alpha).a.reshape(-1)])
    if system.cols == 0:
        return Homotopy(Z(ring, a2, b), Z(ring, b2, c), Z(ring, c2, a)) if not rhs.any() else None
    sol = solve_linear(system, rhs)
    if sol.is_empty:
        return None
    x = sol.particular
    n1, n2 = a2 * b, b2 * c
    H = Homotopy(Matrix(ring, x[:n1].reshape(a2, b)), Matrix(ring, x[n1:n1 + n2].reshape(b2, c)),
                 Matrix(ring, x[n1 + n2:].reshape(c2, a)))
    if not is_homotopy(m1, m2, H):
        raise InternalError("solver returned a non-homotopy")
    return H


def is_contractible(T: CandidateTriangle) -> Homotopy | None:
    """A contracting homotopy (from 0 to the identity) or None."""
    return find_homotopy(zero_morphism(T, T), identity_morphism(T))


def translate_contraction(H: Homotopy) -> Homotopy:
    """Contracting homotopy of translate(T) from one of T."""
    return Homotopy(-H.phi, -H.psi, -H.theta)


def dualize_contraction(H: Homotopy) -> Homotopy:
    """Contracting homotopy of dualize(T) from one of T."""
    return Homotopy(H.psi.T, H.phi.T, H.theta.T)


def direct_sum_homotopy(ring, *hs: Homotopy) -> Homotopy:
    return Homotopy(block_diag(ring, *(h.theta for h in hs)),
                    block_diag(ring, *(h.phi for h in hs)),
                    block_diag(ring, *(h.psi for h in hs)))


# ---------------------------------------------------------------------------
# isomorphisms

@dataclass(frozen=True)
class IsoTriple:
    alpha: Matrix
    beta: Matrix
    gamma: Matrix

    def components(self):
        return self.alpha, self.beta, self.gamma

    def is_valid(self) -> bool:
        return all(is_invertible(m) for m in self.components())

    def inverse(self) -> "IsoTriple":
        return IsoTriple(invert(self.alpha), invert(self.beta), invert(self.gamma))

    def then(self, other: "IsoTriple") -> "IsoTriple":
        """Apply self first, then other."""
        return IsoTriple(other.alpha @ self.alpha, other.beta @ self.beta,
                         other.gamma @ self.gamma)

    @classmethod
    def identity(cls, ring, ranks) -> "IsoTriple":
        return cls(*(Matrix.identity(ring, r) for r in ranks))


def conjugate(T: CandidateTriangle, iso: IsoTriple) -> CandidateTriangle:
    """Transport T along iso: f' = beta f alpha^-1, i' = gamma i beta^-1, q' = alpha q gamma^-1."""
    a, b, c = T.ranks
    if (iso.alpha.shape, iso.beta.shape, iso.gamma.shape) != ((a, a), (b, b), (c, c)):
        raise ShapeError("iso shapes do not match the triangle")
    try:
        ai, bi, ci = iso.inverse().components()
    except ValueError as exc:
        raise MorphismError(f"conjugation by a non-invertible triple: {exc}") from None
    return CandidateTriangle(iso.beta @ T.f @ ai, iso.gamma @ T.i @ bi, iso.alpha @ T.q @ ci)


def iso_as_morphism(T: CandidateTriangle, iso: IsoTriple) -> TriangleMorphism:
    return TriangleMorphism(T, conjugate(T, iso), *iso.components())


def cone_iso_from_homotopy(m1: TriangleMorphism, m2: TriangleMorphism,
                           H: Homotopy) -> IsoTriple:
    """Isomorphism cone(m1) -> cone(m2) built from a homotopy m1 ~ m2.

    Each component is block unitriangular, (1 0; -h 1) with h = theta, phi, psi
    on B+A', C+B', A+C' respectively.
    """
    if not is_homotopy(m1, m2, H):
        raise HomotopyError("H is not a homotopy from m1 to m2")
    S, T = m1.source, m1.target
    ring = S.ring
    (a, b, c), (a2, b2, c2) = S.ranks, T.ranks

    def unitri(n1, n2, h):
        return bmat(ring, [[Matrix.identity(ring, n1), Matrix.zeros(ring, n1, n2)],
                           [-h, Matrix.identity(ring, n2)]])

    iso = IsoTriple(unitri(b, a2, H.theta), unitri(c, b2, H.phi), unitri(a, c2, H.psi))
    c1, c2_ = mapping_cone(m1), mapping_cone(m2)
    if not iso.is_valid() or morphism_defect(c1, c2_, *iso.components()) is not None:
        raise InternalError("cone isomorphism failed verification")
    return iso


# ---------------------------------------------------------------------------
# the three indecomposable contractible shapes

def standard_contractible(ring, kind: str, r: int) -> tuple[CandidateTriangle, Homotopy]:
    """Contractible piece of rank r with its contracting homotopy.

    kind "f": W -1-> W -> 0 -> W;  "i": 0 -> W -1-> W -> 0;  "q": W -> 0 -> W -1-> W.
    """
    I, Z = Matrix.identity(ring, r), Matrix.zeros
    if kind == "f":
        T = CandidateTriangle(I, Z(ring, 0, r), Z(ring, r, 0))
        return T, Homotopy(I, Z(ring, r, 0), Z(ring, 0, r))
    if kind == "i":
        T = CandidateTriangle(Z(ring, r, 0), I, Z(ring, 0, r))
        return T, Homotopy(Z(ring, 0, r), I, Z(ring, r, 0))
    if kind == "q":
        T = CandidateTriangle(Z(ring, 0, r), Z(ring, r, 0), I)
        return T, Homotopy(Z(ring, r, 0), Z(ring, 0, r), I)
    raise ValueError(f"unknown contractible kind {kind!r}")
