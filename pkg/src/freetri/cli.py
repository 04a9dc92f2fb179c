"""Command-line interface: ``freetri <command> ...`` (or ``python3 -m freetri``).

Exit codes: 0 for the expected/positive outcome, 1 for a negative
mathematical outcome (not exact, campaign failures, unexpected search
result), 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from . import formats
from .axioms import PreconditionError, extend_to_exact, fill_in, verify_axioms
from .exactness import brute_force_exact, decide_exact, homology_of_2T, is_quasi_exact
from .generators import generators
from .hopf import (SearchTooLargeError, UnsupportedRingError, four_annihilates, hopf_search,
                   n_exotic_search, two_c_nonzero)
from .linalg import Matrix, ShapeError
from .ring import InvalidDescriptorError, RingDescriptor, make_ring
from .triangle import CandidateError, CandidateTriangle, MorphismError, TriangleMorphism, mapping_cone

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# input helpers

def _ring(text: str | None):
    if text is None:
        return None
    try:
        return make_ring(RingDescriptor.parse(text))
    except (InvalidDescriptorError, ValueError) as exc:
        raise InputError(f"--ring: {exc}") from None


def _need_ring(args):
    ring = _ring(args.ring)
    if ring is None:
        raise InputError("--ring is required for this command")
    return ring


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None


def _triangle(path: str, ring) -> CandidateTriangle:
    try:
        return formats.parse_triangle_text(_read(path), ring)
    except formats.FormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _matrix(text: str, ring, shape=None) -> Matrix:
    """A matrix from a file path or an inline literal with rows separated by ';'."""
    if Path(text).is_file():
        try:
            return formats.parse_matrix_text(_read(text), ring, shape)
        except formats.FormatError as exc:
            raise InputError(f"{text}: {exc}") from None
    rows = [r.strip() for r in text.split(";")] if text.strip() else []
    if shape is None:
        if not rows:
            raise InputError("an empty inline matrix needs a file with a 'shape' line")
        shape = (len(rows), len(rows[0].split()))
    lines = [(0, r) for r in rows] if rows else [(0, "rows 0" if shape[0] == 0 else "cols 0")]
    try:
        return formats.parse_matrix_lines(ring, lines, shape)
    except formats.FormatError as exc:
        raise InputError(f"inline matrix {text!r}: {exc}") from None


# ---------------------------------------------------------------------------
# commands; each returns (exit code, output lines)

def cmd_decide(args):
    T = _triangle(args.file, _ring(args.ring))
    cert = decide_exact(T)
    out = []
    if cert is None:
        qe = "yes" if is_quasi_exact(T) else "no"
        out.append(f"NOT_EXACT quasi_exact={qe}")
        return EXIT_NEGATIVE, out
    if args.emit == "cert":
        out.append(formats.format_certificate(T, cert).rstrip("\n"))
    out.append(f"EXACT x2_rank={cert.x2_rank} "
               f"contractible_rank={cert.contractible_part.total_rank}")
    return EXIT_OK, out


def cmd_invariants(args):
    T = _triangle(args.file, _ring(args.ring))
    h = homology_of_2T(T)
    qe = is_quasi_exact(T)
    s3 = "n/a"
    if qe:
        s3 = "yes" if h.sigma_cubed() == Matrix.identity(T.ring.field, h.dims[0]) else "no"
    out = ["ranks {} {} {}".format(*T.ranks),
           "homology_dims {} {} {}".format(*h.dims)]
    for name, s in zip(("sigma_AB", "sigma_BC", "sigma_CA"), h.sigma):
        out.append(f"{name}:")
        out.append(formats.format_matrix(s))
    out.append(f"INVARIANTS quasi_exact={'yes' if qe else 'no'} "
               f"dims={','.join(map(str, h.dims))} sigma_cubed_identity={s3}")
    return EXIT_OK, out


def cmd_extend(args):
    ring = _need_ring(args)
    f = _matrix(args.matrix, ring)
    T, cert = extend_to_exact(f)
    if args.emit == "cert":
        return EXIT_OK, [formats.format_certificate(T, cert).rstrip("\n")]
    return EXIT_OK, [formats.format_triangle(T).rstrip("\n"),
                     f"EXTEND x2_rank={cert.x2_rank} cone_rank={T.ranks[2]}"]


def cmd_fillin(args):
    ring = _ring(args.ring)
    up, low = _triangle(args.up, ring), _triangle(args.low, ring)
    ring = up.ring
    alpha = _matrix(args.alpha, ring, (low.ranks[0], up.ranks[0]))
    beta = _matrix(args.beta, ring, (low.ranks[1], up.ranks[1]))
    try:
        m = fill_in(alpha, beta, up, low)
    except PreconditionError as exc:
        raise InputError(str(exc)) from None
    cone = mapping_cone(m)
    return EXIT_OK, ["gamma:", formats.format_matrix(m.gamma),
                     "cone:", formats.format_triangle(cone, header=False).rstrip("\n"),
                     f"FILLIN cone_exact=yes cone_ranks={','.join(map(str, cone.ranks))}"]


def cmd_cone(args):
    ring = _ring(args.ring)
    S, T = _triangle(args.source, ring), _triangle(args.target, ring)
    ring = S.ring
    (a, b, c), (a2, b2, c2) = S.ranks, T.ranks
    alpha = _matrix(args.alpha, ring, (a2, a))
    beta = _matrix(args.beta, ring, (b2, b))
    gamma = _matrix(args.gamma, ring, (c2, c))
    try:
        m = TriangleMorphism(S, T, alpha, beta, gamma)
    except MorphismError as exc:
        raise InputError(f"not a morphism: {exc}") from None
    cone = mapping_cone(m)
    exact = decide_exact(cone) is not None
    return EXIT_OK, [formats.format_triangle(cone).rstrip("\n"),
                     f"CONE exact={'yes' if exact else 'no'}"]


def cmd_axioms(args):
    ring = _need_ring(args)
    report = verify_axioms(ring, args.seed, args.trials, args.max_rank)
    out = [report.summary_line()] if args.emit == "summary" else [report.text()]
    return (EXIT_OK if report.failures == 0 else EXIT_NEGATIVE), out


def cmd_hopf(args):
    ring = _need_ring(args)
    res = hopf_search(ring, args.rank)
    out = [res.line(), "note: searched the exact triangle from extend_to_exact(2); "
                       "any exact triangle on 2 gives the same answer"]
    if args.rank >= 1:
        out.append(f"two_c_nonzero={'yes' if two_c_nonzero(ring, args.rank) else 'no'} "
                   f"four_annihilates={'yes' if four_annihilates(ring, args.rank) else 'no'}")
    expected = (args.rank == 0) == bool(res.witnesses)
    return (EXIT_OK if expected else EXIT_NEGATIVE), out


def cmd_nexotic(args):
    ring = _need_ring(args)
    res = n_exotic_search(ring, args.rank, args.n)
    out = [f"candidates={res.candidates} exact_h={len(res.exact)}", res.line()]
    expected = args.rank == 0 or (res.witness is not None) == (args.n % 4 == 2)
    return (EXIT_OK if expected else EXIT_NEGATIVE), out


def cmd_gen(args):
    ring = _need_ring(args)
    out = []
    outdir = Path(args.out) if args.out else None
    if outdir is not None:
        outdir.mkdir(parents=True, exist_ok=True)
    for k in range(args.count):
        rng = np.random.default_rng([args.seed, k])
        T = generators(args.kind, rng, args.rank_bound, ring)
        text = formats.format_triangle(T)
        if outdir is None:
            out.append(text.rstrip("\n"))
            if k + 1 < args.count:
                out.append("---")
        else:
            path = outdir / f"{args.kind}_{args.seed}_{k:04d}.tri"
            path.write_text(text)
            out.append(str(path))
    return EXIT_OK, out


def rank1_oracle_agreement(ring=None):
    """decide_exact versus brute_force_exact on every rank-(1,1,1) candidate."""
    ring = ring or make_ring("zmod4")
    total = agree = exact = 0
    els = range(ring.size)
    for f in els:
        for i in els:
            for q in els:
                try:
                    T = CandidateTriangle(Matrix(ring, [[f]]), Matrix(ring, [[i]]),
                                          Matrix(ring, [[q]]))
                except CandidateError:
                    continue
                total += 1
                d = decide_exact(T) is not None
                exact += d
                agree += d == brute_force_exact(T)
    return total, agree, exact


def cmd_selfcheck(args):
    t0 = time.perf_counter()
    out, ok = [], True
    total, agree, exact = rank1_oracle_agreement()
    ok &= total == agree
    out.append(f"rank1 zmod4 candidates={total} agree={agree} exact={exact}")
    for tok in ("galois4:2", "dual2:1", "dual2:2"):
        t, a, e = rank1_oracle_agreement(make_ring(tok))
        ok &= t == a
        out.append(f"rank1 {tok} candidates={t} agree={a} exact={e}")
    rep = verify_axioms(make_ring("zmod4"), seed=0, trials=20, max_rank=2)
    ok &= rep.failures == 0
    out.append(rep.summary_line())
    res = hopf_search(make_ring("zmod4"), 2)
    ok &= not res.witnesses
    out.append(res.line())
    out.append(f"SELFCHECK status={'pass' if ok else 'fail'} "
               f"seconds={time.perf_counter() - t0:.2f}")
    return (EXIT_OK if ok else EXIT_NEGATIVE), out


# ---------------------------------------------------------------------------
# argument parsing

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="freetri",
                                description="Exact triangles in F(R) for small local rings.")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        sp.add_argument("--ring", help="ring descriptor, e.g. zmod4, galois4:2, 'dual2 m=1 poly=1,1'")
        return sp

    sp = add("decide", cmd_decide, "decide exactness of a triangle file")
    sp.add_argument("--file", required=True)
    sp.add_argument("--emit", choices=("report", "cert", "summary"), default="report")

    sp = add("invariants", cmd_invariants, "homology of pi T and sigma")
    sp.add_argument("--file", required=True)

    sp = add("extend", cmd_extend, "extend a matrix to an exact triangle")
    sp.add_argument("--matrix", required=True, help="matrix file or inline rows 'a b;c d'")
    sp.add_argument("--emit", choices=("report", "cert", "summary"), default="report")

    sp = add("fillin", cmd_fillin, "complete a commuting square over exact rows")
    for name in ("up", "low", "alpha", "beta"):
        sp.add_argument(f"--{name}", required=True)

    sp = add("cone", cmd_cone, "mapping cone of a triangle morphism")
    for name in ("source", "target", "alpha", "beta", "gamma"):
        sp.add_argument(f"--{name}", required=True)

    sp = add("axioms", cmd_axioms, "seeded axiom campaign")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--max-rank", type=int, default=3)
    sp.add_argument("--emit", choices=("report", "cert", "summary"), default="report")

    sp = add("hopf", cmd_hopf, "exhaustive Hopf-map search")
    sp.add_argument("--rank", type=int, required=True)

    sp = add("nexotic", cmd_nexotic, "search for h with (n, n, h) exact")
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)

    sp = add("gen", cmd_gen, "write seeded sample triangle files")
    sp.add_argument("--kind", default="triangle",
                    choices=("triangle", "exact_triangle", "quasi_exact", "trivial", "contractible"))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--rank-bound", type=int, default=2)
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--out", help="directory for the files (default: stdout)")

    add("selfcheck", cmd_selfcheck, "fast oracle-agreement self test")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for name in ("rank", "trials", "max_rank", "rank_bound", "count"):
        if getattr(args, name, 0) is not None and getattr(args, name, 0) < 0:
            print(f"freetri: --{name.replace('_', '-')} must be non-negative", file=sys.stderr)
            return EXIT_INPUT
    try:
        code, out = args.func(args)
    except (InputError, formats.FormatError, ShapeError, UnsupportedRingError,
            SearchTooLargeError) as exc:
        print(f"freetri {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write("\n".join(out) + ("\n" if out else ""))
    sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
