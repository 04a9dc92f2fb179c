"""Plain-text formats for matrices, triangles and exactness certificates.

A matrix block is one row per line with space-separated element literals.
Empty matrices are written as a single ``rows 0`` (no rows) or ``cols 0``
(rows present but no columns) line; their full shape always comes from
context (triangle ranks, or a ``shape r c`` line in standalone files).

Triangle file::

    ring zmod4
    ranks 1 1 1
    f:
    2
    i:
    2
    q:
    2

Certificate file: the triangle sections, then ``x2_rank``,
``contractible_ranks``, labeled blocks ``alpha: beta: gamma:`` for the
isomorphism, ``Kf: Ki: Kq:`` for the contractible part and
``theta: phi: psi:`` for its contracting homotopy.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .linalg import Matrix
from .ring import InvalidDescriptorError, RingDescriptor, make_ring
from .triangle import CandidateError, CandidateTriangle, Homotopy, IsoTriple, ShapeError


class FormatError(ValueError):
    """Malformed text input; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


# ---------------------------------------------------------------------------
# matrices

def format_matrix(M: Matrix) -> str:
    if M.rows == 0:
        return "rows 0"
    if M.cols == 0:
        return "cols 0"
    fmt = M.ring.format
    return "\n".join(" ".join(fmt(x) for x in row) for row in M.a.tolist())


def parse_matrix_lines(ring, lines: list[tuple[int, str]], shape: tuple[int, int]) -> Matrix:
    """Parse (lineno, text) rows into a matrix of the expected shape."""
    rows, cols = shape
    first = lines[0][0] if lines else None
    if len(lines) == 1 and lines[0][1].split() in (["rows", "0"], ["cols", "0"]):
        word = lines[0][1].split()[0]
        if (word == "rows" and rows != 0) or (word == "cols" and (cols != 0 or rows == 0)):
            raise FormatError(f"'{lines[0][1]}' does not match expected shape {rows}x{cols}",
                              first)
        return Matrix.zeros(ring, rows, cols)
    if rows == 0 or cols == 0:
        raise FormatError(f"expected an empty {rows}x{cols} block ('rows 0' or 'cols 0')", first)
    if len(lines) != rows:
        raise FormatError(f"expected {rows} rows, found {len(lines)}", first)
    data = np.zeros((rows, cols), dtype=np.int64)
    for r, (lineno, text) in enumerate(lines):
        toks = text.split()
        if len(toks) != cols:
            raise FormatError(f"expected {cols} entries, found {len(toks)}", lineno)
        for c, tok in enumerate(toks):
            try:
                data[r, c] = ring.parse(tok)
            except ValueError as exc:
                raise FormatError(str(exc), lineno) from None
    return Matrix(ring, data)


def format_matrix_file(M: Matrix) -> str:
    return f"ring {M.ring.descriptor}\nshape {M.rows} {M.cols}\n{format_matrix(M)}\n"


def parse_matrix_text(text: str, ring=None, expect: tuple[int, int] | None = None) -> Matrix:
    """Standalone matrix: optional ``ring`` line, optional ``shape r c`` line, rows.

    Without a shape line the shape is ``expect`` or is read off the rows.
    """
    lines = _content_lines(text)
    header, body = _headers(lines, ("ring", "shape"))
    ring = _ring_from_header(header, ring)
    if "shape" in header:
        lineno, vals = header["shape"]
        shape = _ints(vals, 2, "shape", lineno)
        if expect is not None and shape != tuple(expect):
            raise FormatError(f"shape {shape} differs from the expected {tuple(expect)}", lineno)
    elif expect is not None:
        shape = tuple(expect)
    else:
        if not body or body[0][1].split()[0] in ("rows", "cols"):
            raise FormatError("empty matrix needs a 'shape r c' line")
        shape = (len(body), len(body[0][1].split()))
    return parse_matrix_lines(ring, body, shape)


# ---------------------------------------------------------------------------
# helpers

def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((n, line))
    return out


def _headers(lines, keys):
    """Split off leading ``key value...`` header lines."""
    header, k = {}, 0
    while k < len(lines) and lines[k][1].split()[0] in keys:
        lineno, text = lines[k]
        key, _, rest = text.partition(" ")
        header[key] = (lineno, rest.strip())
        k += 1
    return header, lines[k:]


def _ring_from_header(header, ring):
    if "ring" in header:
        lineno, desc = header["ring"]
        try:
            parsed = make_ring(RingDescriptor.parse(desc))
        except (InvalidDescriptorError, ValueError) as exc:
            raise FormatError(str(exc), lineno) from None
        if ring is not None and parsed is not ring:
            raise FormatError(f"file ring {desc!r} differs from requested {ring.descriptor}",
                              lineno)
        return parsed
    if ring is None:
        raise FormatError("missing 'ring <descriptor>' line")
    return ring


def _ints(text: str, n: int, what: str, lineno: int) -> tuple[int, ...]:
    try:
        vals = tuple(int(t) for t in text.split())
    except ValueError:
        vals = ()
    if len(vals) != n or any(v < 0 for v in vals):
        raise FormatError(f"'{what}' needs {n} non-negative integers", lineno)
    return vals


def _labeled_blocks(lines) -> dict[str, tuple[int, list]]:
    """Group lines under ``label:`` markers; other keyword lines are returned as scalars."""
    blocks: dict[str, tuple[int, list]] = {}
    current = None
    for lineno, text in lines:
        if text.endswith(":") and " " not in text:
            label = text[:-1]
            if label in blocks:
                raise FormatError(f"duplicate block '{label}:'", lineno)
            blocks[label] = (lineno, [])
            current = label
        elif current is None:
            raise FormatError(f"unexpected line {text!r} before first block label", lineno)
        else:
            blocks[current][1].append((lineno, text))
    return blocks


def _block(blocks, label, ring, shape, where=None) -> Matrix:
    if label not in blocks:
        raise FormatError(f"missing block '{label}:'", where)
    lineno, lines = blocks[label]
    if not lines:
        raise FormatError(f"block '{label}:' is empty (write 'rows 0' or 'cols 0')", lineno)
    return parse_matrix_lines(ring, lines, shape)


# ---------------------------------------------------------------------------
# triangles

def format_triangle(T: CandidateTriangle, header: bool = True) -> str:
    out = []
    if header:
        out.append(f"ring {T.ring.descriptor}")
    out.append("ranks {} {} {}".format(*T.ranks))
    for name, M in zip("fiq", T.maps()):
        out.append(f"{name}:")
        out.append(format_matrix(M))
    return "\n".join(out) + "\n"


def _parse_triangle_sections(header, blocks, ring, prefix="") -> CandidateTriangle:
    if "ranks" not in header:
        raise FormatError("missing 'ranks rA rB rC' line")
    lineno, vals = header["ranks"]
    a, b, c = _ints(vals, 3, "ranks", lineno)
    f = _block(blocks, prefix + "f", ring, (b, a), lineno)
    i = _block(blocks, prefix + "i", ring, (c, b), lineno)
    q = _block(blocks, prefix + "q", ring, (a, c), lineno)
    try:
        return CandidateTriangle(f, i, q)
    except CandidateError as exc:
        raise FormatError(f"not a candidate triangle: {exc}") from None


def parse_triangle_text(text: str, ring=None) -> CandidateTriangle:
    """Parse a triangle file; errors carry line numbers or name the failing composite."""
    lines = _content_lines(text)
    header, body = _headers(lines, ("ring", "ranks"))
    ring = _ring_from_header(header, ring)
    blocks = _labeled_blocks(body)
    extra = set(blocks) - {"f", "i", "q"}
    if extra:
        lbl = sorted(extra)[0]
        raise FormatError(f"unknown block '{lbl}:'", blocks[lbl][0])
    return _parse_triangle_sections(header, blocks, ring)


def parse_triangle_file(path, ring=None) -> CandidateTriangle:
    return parse_triangle_text(Path(path).read_text(), ring)


def write_triangle_file(path, T: CandidateTriangle) -> None:
    Path(path).write_text(format_triangle(T))


# ---------------------------------------------------------------------------
# certificates

@dataclass
class ParsedCertificate:
    triangle: CandidateTriangle
    iso: IsoTriple
    x2_rank: int
    contractible_part: CandidateTriangle
    contracting_homotopy: Homotopy


def format_certificate(T: CandidateTriangle, cert) -> str:
    """Text dump of a certificate together with the triangle it certifies."""
    K, H = cert.contractible_part, cert.contracting_homotopy
    out = [format_triangle(T).rstrip("\n"),
           f"x2_rank {cert.x2_rank}",
           "contractible_ranks {} {} {}".format(*K.ranks)]
    for name, M in (("alpha", cert.iso.alpha), ("beta", cert.iso.beta),
                    ("gamma", cert.iso.gamma), ("Kf", K.f), ("Ki", K.i), ("Kq", K.q),
                    ("theta", H.theta), ("phi", H.phi), ("psi", H.psi)):
        out.append(f"{name}:")
        out.append(format_matrix(M))
    return "\n".join(out) + "\n"


def parse_certificate_text(text: str, ring=None) -> ParsedCertificate:
    lines = _content_lines(text)
    header, body = _headers(lines, ("ring", "ranks"))
    ring = _ring_from_header(header, ring)
    # x2_rank / contractible_ranks sit between the triangle blocks and the rest
    scalars, rest = {}, []
    for lineno, t in body:
        key = t.split()[0]
        if key in ("x2_rank", "contractible_ranks"):
            scalars[key] = (lineno, t.partition(" ")[2])
        else:
            rest.append((lineno, t))
    for key in ("x2_rank", "contractible_ranks"):
        if key not in scalars:
            raise FormatError(f"missing '{key}' line")
    blocks = _labeled_blocks(rest)
    T = _parse_triangle_sections(header, blocks, ring)
    (n,) = _ints(scalars["x2_rank"][1], 1, "x2_rank", scalars["x2_rank"][0])
    ka, kb, kc = _ints(scalars["contractible_ranks"][1], 3, "contractible_ranks",
                       scalars["contractible_ranks"][0])
    a, b, c = T.ranks
    iso = IsoTriple(_block(blocks, "alpha", ring, (a, a)), _block(blocks, "beta", ring, (b, b)),
                    _block(blocks, "gamma", ring, (c, c)))
    try:
        K = CandidateTriangle(_block(blocks, "Kf", ring, (kb, ka)),
                              _block(blocks, "Ki", ring, (kc, kb)),
                              _block(blocks, "Kq", ring, (ka, kc)))
    except (CandidateError, ShapeError) as exc:
        raise FormatError(f"contractible part: {exc}") from None
    H = Homotopy(_block(blocks, "theta", ring, (ka, kb)), _block(blocks, "phi", ring, (kb, kc)),
                 _block(blocks, "psi", ring, (kc, ka)))
    return ParsedCertificate(T, iso, n, K, H)


def verify_certificate_text(text: str) -> bool:
    """Re-check a dumped certificate from scratch (iso, conjugation, homotopy)."""
    from .exactness import ExactnessCertificate
    pc = parse_certificate_text(text)
    cert = ExactnessCertificate(pc.iso, pc.x2_rank, pc.contractible_part, pc.contracting_homotopy)
    return cert.verify(pc.triangle)
