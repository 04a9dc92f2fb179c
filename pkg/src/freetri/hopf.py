"""Hopf maps and exotic objects in F(R) for R = Z/4 or a Galois ring GR(4, m).

An object A is hopfian if some eta: A -> A with 2 eta = 0 satisfies
i eta q = 2 on the cone C of 2: A -> A; it is exotic if it fits in an exact
triangle E -2-> E -2-> E -h-> E.  Here every object is exotic and only the
zero object is hopfian.  Both notions use the integer 2, so dual-number rings
(where 2 = 0) are rejected rather than reinterpreted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .axioms import extend_to_exact
from .exactness import decide_exact
from .linalg import Matrix, matmul_codes
from .triangle import CandidateTriangle, x2_triangle

# enumerations larger than this many candidates are refused
SEARCH_LIMIT = 1 << 16


class UnsupportedRingError(ValueError):
    pass


class SearchTooLargeError(ValueError):
    pass


def _require_two_ring(ring):
    if ring.kind not in ("zmod4", "galois4"):
        raise UnsupportedRingError(
            f"{ring.descriptor}: Hopf maps and exotic objects need 2 != 0 (zmod4 or galois4)")


def _two(ring, n: int) -> Matrix:
    return Matrix.scalar(ring, n, ring.from_int(2))


@dataclass
class HopfWitness:
    object_rank: int
    triangle: CandidateTriangle
    eta: Matrix


@dataclass
class ExoticWitness:
    triangle: CandidateTriangle
    h: Matrix
    psi: Matrix


def exotic_certificate(ring, n: int) -> ExoticWitness:
    """E = R^n with the exact triangle (2, 2, h = 2 psi), psi = 1."""
    _require_two_ring(ring)
    if n < 0:
        raise ValueError("rank must be non-negative")
    T = x2_triangle(ring, n)          # 2 = pi in these rings
    if decide_exact(T) is None:
        raise AssertionError("X2 triangle failed the exactness check")
    psi = Matrix.identity(ring, n)
    return ExoticWitness(T, T.q, psi)


def _sorted_codes(ring, codes) -> list[int]:
    """Element codes in lexicographic order of their canonical coefficients."""
    return sorted((int(c) for c in codes), key=ring.coeffs)


def _enumerate(values: list[int], n_entries: int) -> np.ndarray:
    if not n_entries:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(itertools.product(values, repeat=n_entries)), dtype=np.int64)


@dataclass
class HopfSearchResult:
    ring: str
    rank: int
    candidates: int
    witnesses: list

    def line(self) -> str:
        return (f"HOPF ring={self.ring} rank={self.rank} candidates={self.candidates} "
                f"witnesses={len(self.witnesses)}")


def hopf_search(ring, n: int, limit: int = SEARCH_LIMIT) -> HopfSearchResult:
    """All eta with 2 eta = 0 and i eta q = 2 on the cone of 2: R^n -> R^n.

    Uses the exact triangle produced by extend_to_exact(2); any exact
    triangle on 2 would do.  eta runs over matrices with entries in pi R,
    lexicographically.
    """
    _require_two_ring(ring)
    count = ring.q ** (n * n)
    if count > limit:
        raise SearchTooLargeError(f"{count} candidates exceed the limit {limit}")
    T, _ = extend_to_exact(_two(ring, n))
    c = T.ranks[2]
    pis = _sorted_codes(ring, ring.times_pi(ring.field.elements()))
    etas = _enumerate(pis, n * n).reshape(len(pis) ** (n * n), n, n)
    target = _two(ring, c).a
    vals = matmul_codes(ring, matmul_codes(ring, T.i.a[None], etas), T.q.a[None])
    hits = np.flatnonzero((vals == target).all(axis=(1, 2)))
    witnesses = [HopfWitness(n, T, Matrix(ring, etas[k])) for k in hits]
    for w in witnesses:
        assert not (w.eta @ _two(ring, n)).a.any()
    return HopfSearchResult(ring.descriptor.token(), n, len(etas), witnesses)


def two_c_nonzero(ring, n: int) -> bool:
    """Whether 2 * identity is nonzero on the cone of 2: R^n -> R^n."""
    _require_two_ring(ring)
    T, _ = extend_to_exact(_two(ring, n))
    return not _two(ring, T.ranks[2]).is_zero()


def four_annihilates(ring, n: int) -> bool:
    """1 + 1 + 1 + 1 = 0 on R^n, computed by repeated addition."""
    one = Matrix.identity(ring, n)
    return (one + one + one + one).is_zero()


@dataclass
class NExoticResult:
    ring: str
    rank: int
    n: int
    candidates: int
    exact: list

    @property
    def witness(self) -> Matrix | None:
        return self.exact[0] if self.exact else None

    def line(self) -> str:
        w = self.witness
        if w is None:
            shown = "none"
        elif w.rows == 0:
            shown = "[]"
        else:
            shown = ";".join(" ".join(w.ring.format(x) for x in row) for row in w.a.tolist())
        return f"NEXOTIC ring={self.ring} rank={self.rank} n={self.n} witness={shown}"


def n_exotic_search(ring, r: int, n: int, limit: int = SEARCH_LIMIT) -> NExoticResult:
    """Every h making E -n-> E -n-> E -h-> E an exact triangle, E = R^r.

    h runs over all r x r matrices in lexicographic order of coefficients.
    ``candidates`` counts the h satisfying the candidate conditions.
    """
    _require_two_ring(ring)
    count = ring.size ** (r * r)
    if count > limit:
        raise SearchTooLargeError(f"{count} candidates exceed the limit {limit}")
    tok = ring.descriptor.token()
    nI = Matrix.scalar(ring, r, ring.from_int(n))
    if not (nI @ nI).is_zero():
        return NExoticResult(tok, r, n, 0, [])
    hs = _enumerate(_sorted_codes(ring, ring.elements()), r * r).reshape(count, r, r)
    ok = ((~matmul_codes(ring, hs, nI.a[None]).astype(bool)).all(axis=(1, 2))
          & (~matmul_codes(ring, nI.a[None], hs).astype(bool)).all(axis=(1, 2)))
    exact = []
    for k in np.flatnonzero(ok):
        h = Matrix(ring, hs[k])
        if decide_exact(CandidateTriangle(nI, nI, h)) is not None:
            exact.append(h)
    return NExoticResult(tok, r, n, int(ok.sum()), exact)
