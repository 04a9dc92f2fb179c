"""Constructive witnesses for the triangulated structure on F(R).

``extend_to_exact`` completes a morphism to an exact triangle, ``fill_in``
completes a commuting square over exact rows to a morphism with exact cone,
and ``verify_axioms`` runs a seeded campaign over all axioms.
"""

from __future__ import annotations

import traceback
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .exactness import ExactnessCertificate, decide_exact
from .generators import (random_commuting_square, random_exact_triangle, random_iso,
                         random_matrix)
from .linalg import Matrix, block_diag, bmat, invert, normal_form, solve_matrix
from .ring import make_ring
from .triangle import (CandidateTriangle, Homotopy, InternalError, IsoTriple, MorphismError,
                       TriangleMorphism, conjugate, dualize, dualize_contraction,
                       mapping_cone, morphism_defect, translate, translate_back,
                       translate_contraction, trivial_triangle, x2_triangle)


class PreconditionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# extending a morphism

def complement_triangle(ring, w: int, y: int, z: int) -> tuple[CandidateTriangle, Homotopy]:
    """W+Y -> W+Z -> Y+Z -> W+Y with maps (1 0; 0 0), (0 0; 0 1), (0 0; 1 0).

    Returned with its contracting homotopy.
    """
    I, Z = Matrix.identity, Matrix.zeros
    f = block_diag(ring, I(ring, w), Z(ring, z, y))
    i = block_diag(ring, Z(ring, y, w), I(ring, z))
    q = bmat(ring, [[Z(ring, w, y), Z(ring, w, z)], [I(ring, y), Z(ring, y, z)]])
    T = CandidateTriangle(f, i, q)
    theta = block_diag(ring, I(ring, w), Z(ring, y, z))
    phi = block_diag(ring, Z(ring, w, y), I(ring, z))
    psi = bmat(ring, [[Z(ring, y, w), I(ring, y)], [Z(ring, z, w), Z(ring, z, y)]])
    return T, Homotopy(theta, phi, psi)


def _permutation(ring, order) -> Matrix:
    n = len(order)
    P = np.zeros((n, n), dtype=np.int64)
    P[np.arange(n), order] = 1
    return Matrix(ring, P)


def extend_to_exact(f: Matrix) -> tuple[CandidateTriangle, ExactnessCertificate]:
    """Exact triangle A -f-> B -> C -> A with certificate.

    With f = P diag(1, pi, 0) Q over A = W+X+Y, B = W+X+Z, the triangle is
    X2 on X plus the complement triangle on W, Y, Z, transported by (Q^-1, P, 1).
    """
    ring = f.ring
    b, a = f.shape
    nf = normal_form(f)
    w, x = nf.r1, nf.r2
    y, z = a - w - x, b - w - x
    I, Z = Matrix.identity, Matrix.zeros
    pX = Matrix.scalar(ring, x, ring.pi)
    # C = X + Y + Z
    i_D = bmat(ring, [[Z(ring, x, w), pX, Z(ring, x, z)],
                      [Z(ring, y, w), Z(ring, y, x), Z(ring, y, z)],
                      [Z(ring, z, w), Z(ring, z, x), I(ring, z)]])
    q_D = bmat(ring, [[Z(ring, w, x), Z(ring, w, y), Z(ring, w, z)],
                      [pX, Z(ring, x, y), Z(ring, x, z)],
                      [Z(ring, y, x), I(ring, y), Z(ring, y, z)]])
    T_D = CandidateTriangle(nf.D, i_D, q_D)
    c = x + y + z
    T = CandidateTriangle(f, i_D @ nf.P_inv, nf.Q_inv @ q_D)

    K, H = complement_triangle(ring, w, y, z)
    # A: W X Y -> X W Y ; B: W X Z -> X W Z ; C unchanged
    perm_a = _permutation(ring, list(range(w, w + x)) + list(range(w)) + list(range(w + x, a)))
    perm_b = _permutation(ring, list(range(w, w + x)) + list(range(w)) + list(range(w + x, b)))
    iso = IsoTriple(nf.Q, nf.P_inv, I(ring, c)).then(IsoTriple(perm_a, perm_b, I(ring, c)))
    cert = ExactnessCertificate(iso, x, K, H, [("complement", (w, y, z))])
    if T.f != f or conjugate(T, IsoTriple(nf.Q, nf.P_inv, I(ring, c))) != T_D or not cert.verify(T):
        raise InternalError("extend_to_exact produced an unverifiable triangle")
    return T, cert


# ---------------------------------------------------------------------------
# completing a commuting square

def _fill_from_contractible(src: CandidateTriangle, H: Homotopy, tgt: CandidateTriangle,
                            alpha: Matrix, beta: Matrix) -> Matrix:
    """gamma for a square out of a contractible row into a quasi-exact row.

    Lift alpha q through q' (C is free), then correct: gamma = g + (i' beta - g i) Phi.
    """
    g = solve_matrix(tgt.q, alpha @ src.q)
    if g is None:
        raise InternalError("projective lift failed: target row is not quasi-exact")
    return g + (tgt.i @ beta - g @ src.i) @ H.phi


def _fill_into_contractible(src: CandidateTriangle, tgt: CandidateTriangle, H_tgt: Homotopy,
                            alpha: Matrix, beta: Matrix) -> Matrix:
    """gamma for a square out of a quasi-exact row into a contractible row, by duality.

    Dualizing and translating twice turns (alpha, ?, beta)^T into a square
    (beta^T, alpha^T, ?) out of a contractible row.
    """
    up = translate(translate(dualize(tgt)))
    low = translate(translate(dualize(src)))
    H = translate_contraction(translate_contraction(dualize_contraction(H_tgt)))
    return _fill_from_contractible(up, H, low, beta.T, alpha.T).T


def _split(n: int, total: int):
    return slice(0, n), slice(n, total)


def fill_in(alpha: Matrix, beta: Matrix, T_up: CandidateTriangle, T_low: CandidateTriangle,
            coverage: Counter | None = None) -> TriangleMorphism:
    """gamma making (alpha, beta, gamma) a morphism T_up -> T_low with exact cone.

    Both rows are brought to X2 + contractible by their certificates and the
    square is filled blockwise: X2 -> X2 with gamma = beta + pi*delta,
    delta = P diag(0, 1, 0) Q from alpha's normal form; blocks leaving a
    contractible by projective lifting; X2 -> contractible by duality.
    """
    if T_low.f @ alpha != beta @ T_up.f:
        raise PreconditionError("square does not commute: f'·alpha != beta·f")
    cu, cl = decide_exact(T_up), decide_exact(T_low)
    if cu is None or cl is None:
        raise PreconditionError("fill_in needs exact rows")
    ring = alpha.ring
    u, v = cu.iso, cl.iso
    S, S2 = cu.standard_form(), cl.standard_form()
    a_t = v.alpha @ alpha @ invert(u.alpha)
    b_t = v.beta @ beta @ invert(u.beta)
    n, n2 = cu.x2_rank, cl.x2_rank
    (a, b, c), (a2, b2, c2) = S.ranks, S2.ranks
    src_blocks = [_split(n, a), _split(n, b), _split(n, c)]
    tgt_blocks = [_split(n2, a2), _split(n2, b2), _split(n2, c2)]
    K, K2 = cu.contractible_part, cl.contractible_part
    H, H2 = cu.contracting_homotopy, cl.contracting_homotopy
    summands_src = [(x2_triangle(ring, n), None), (K, H)]
    summands_tgt = [(x2_triangle(ring, n2), None), (K2, H2)]

    gamma_t = np.zeros((c2, c), dtype=np.int64)
    for ti, (tgt, Ht) in enumerate(summands_tgt):
        for si, (src, Hs) in enumerate(summands_src):
            ra, rb, rc = (tgt_blocks[j][ti] for j in range(3))
            ca, cb, cc = (src_blocks[j][si] for j in range(3))
            blk_a, blk_b = a_t[ra, ca], b_t[rb, cb]
            if ti == 0 and si == 0:
                case = "x2_to_x2"
                nfa = normal_form(blk_a)
                mid = np.zeros(blk_a.shape, dtype=np.int64)
                idx = np.arange(nfa.r1, nfa.rank)
                mid[idx, idx] = 1
                delta = nfa.P @ Matrix(ring, mid) @ nfa.Q
                g = blk_b + delta.times_pi()
            elif si == 1:
                case = "contractible_source"
                g = _fill_from_contractible(src, Hs, tgt, blk_a, blk_b)
            else:
                case = "duality"
                g = _fill_into_contractible(src, tgt, Ht, blk_a, blk_b)
            if coverage is not None and src.total_rank and tgt.total_rank:
                coverage[case] += 1
            gamma_t[rc, cc] = g.a
    gamma = invert(v.gamma) @ Matrix(ring, gamma_t) @ u.gamma
    try:
        m = TriangleMorphism(T_up, T_low, alpha, beta, gamma)
    except MorphismError as exc:
        raise InternalError(f"fill-in is not a morphism: {exc}") from None
    if decide_exact(mapping_cone(m)) is None:
        raise InternalError("fill-in produced a non-exact mapping cone")
    return m


# ---------------------------------------------------------------------------
# campaigns

CHECKS = ("extend", "translate", "translate_back", "fill_in", "conjugation", "trivial")


@dataclass
class AxiomReport:
    ring: str
    seed: int
    trials: int
    max_rank: int
    passed: Counter = field(default_factory=Counter)
    failed: Counter = field(default_factory=Counter)
    coverage: Counter = field(default_factory=Counter)
    first_failure: str | None = None

    @property
    def failures(self) -> int:
        return sum(self.failed.values())

    def summary_line(self) -> str:
        return (f"AXIOMS ring={self.ring} seed={self.seed} trials={self.trials} "
                f"failures={self.failures}")

    def text(self) -> str:
        lines = [f"axiom campaign ring={self.ring} seed={self.seed} trials={self.trials} "
                 f"max_rank={self.max_rank}"]
        for name in CHECKS:
            lines.append(f"  {name:<15} pass={self.passed[name]} fail={self.failed[name]}")
        cov = " ".join(f"{k}={self.coverage[k]}"
                       for k in ("x2_to_x2", "contractible_source", "duality"))
        lines.append(f"  fill-in cases   {cov}")
        if self.first_failure:
            lines.append("first failure:")
            lines.append(self.first_failure)
        lines.append(self.summary_line())
        return "\n".join(lines)


def _bundle(check: str, trial: int, objs: dict, exc: BaseException | None) -> str:
    from .formats import format_matrix, format_triangle
    out = [f"check={check} trial={trial}"]
    for name, obj in objs.items():
        if isinstance(obj, CandidateTriangle):
            out.append(f"[{name}]")
            out.append(format_triangle(obj))
        elif isinstance(obj, Matrix):
            out.append(f"[{name}] shape {obj.rows} {obj.cols}")
            out.append(format_matrix(obj))
    if exc is not None:
        out.append("".join(traceback.format_exception_only(type(exc), exc)).strip())
    return "\n".join(out)


def run_trial(ring, seed: int, trial: int, max_rank: int, report: AxiomReport):
    rng = np.random.default_rng([seed, trial])

    def record(check, ok, objs, exc=None):
        if ok:
            report.passed[check] += 1
        else:
            report.failed[check] += 1
            if report.first_failure is None:
                report.first_failure = _bundle(check, trial, objs, exc)

    def attempt(check, objs, fn):
        try:
            record(check, bool(fn()), objs)
        except Exception as exc:  # failures are data here
            record(check, False, objs, exc)

    # (a) every morphism extends to an exact triangle
    f = random_matrix(ring, rng, int(rng.integers(0, max_rank + 1)),
                      int(rng.integers(0, max_rank + 1)))
    attempt("extend", {"f": f},
            lambda: (lambda T: T[0].f == f and decide_exact(T[0]) is not None)(extend_to_exact(f)))

    # (b) translation in both directions
    T = random_exact_triangle(ring, rng, max_rank)
    attempt("translate", {"T": T}, lambda: decide_exact(translate(T)) is not None)
    attempt("translate_back", {"T": T}, lambda: decide_exact(translate_back(T)) is not None)

    # (c) fill-in with exact cone
    up = random_exact_triangle(ring, rng, max_rank)
    low = random_exact_triangle(ring, rng, max_rank)
    alpha, beta = random_commuting_square(up, low, rng)
    attempt("fill_in", {"T_up": up, "T_low": low, "alpha": alpha, "beta": beta},
            lambda: fill_in(alpha, beta, up, low, report.coverage) is not None)

    # (d) closure under isomorphism
    iso = random_iso(ring, rng, T.ranks)
    attempt("conjugation", {"T": T}, lambda: decide_exact(conjugate(T, iso)) is not None)

    # (e) the trivial triangle
    r = int(rng.integers(0, max_rank + 1))
    attempt("trivial", {}, lambda: decide_exact(trivial_triangle(ring, r)) is not None)


def verify_axioms(ring, seed: int = 0, trials: int = 100, max_rank: int = 3) -> AxiomReport:
    """Seeded campaign; trial t uses the generator seeded by (seed, t)."""
    if isinstance(ring, str):
        ring = make_ring(ring)
    report = AxiomReport(ring.descriptor.token(), seed, trials, max_rank)
    for t in range(trials):
        run_trial(ring, seed, t, max_rank, report)
    return report
