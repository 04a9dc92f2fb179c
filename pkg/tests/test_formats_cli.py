"""Text formats and the command-line interface."""

import numpy as np
import pytest

from freetri import (FormatError, Matrix, decide_exact, format_certificate, format_triangle,
                     make_ring, parse_certificate_text, parse_matrix_text, parse_triangle_text,
                     trivial_triangle, verify_certificate_text, x2_triangle, zero_triangle)
from freetri.cli import main
from freetri.formats import format_matrix_file
from freetri.generators import random_exact_triangle, random_triangle

X2_TEXT = "ring zmod4\nranks 1 1 1\nf:\n2\ni:\n2\nq:\n2\n"


# --- formats -----------------------------------------------------------------

def test_triangle_round_trip(any_ring):
    rng = np.random.default_rng(41)
    for _ in range(30):
        T = random_triangle(any_ring, rng, 3)
        assert parse_triangle_text(format_triangle(T)) == T


def test_parse_x2_and_zero(Z4):
    assert parse_triangle_text(X2_TEXT) == x2_triangle(Z4, 1)
    zero = "ring zmod4\nranks 0 0 0\nf:\nrows 0\ni:\nrows 0\nq:\nrows 0\n"
    assert parse_triangle_text(zero) == zero_triangle(Z4)
    text = format_triangle(trivial_triangle(Z4))
    assert "cols 0" in text and "rows 0" in text
    assert parse_triangle_text(text) == trivial_triangle(Z4)


def test_parse_rejects_non_candidate_naming_composite():
    with pytest.raises(FormatError, match="f∘q"):
        parse_triangle_text("ring zmod4\nranks 1 1 1\nf:\n2\ni:\n2\nq:\n1\n")


@pytest.mark.parametrize("text,line", [
    ("ring zmod4\nranks 1 1 1\nf:\n2 2\ni:\n2\nq:\n2\n", 4),      # too many entries
    ("ring zmod4\nranks 1 1 1\nf:\n7\ni:\n2\nq:\n2\n", 4),        # bad literal
    ("ring zmod4\nranks 1 x 1\nf:\n2\ni:\n2\nq:\n2\n", 2),        # bad ranks
    ("ring zmod5\nranks 1 1 1\nf:\n2\ni:\n2\nq:\n2\n", 1),        # bad ring
    ("ring zmod4\nranks 1 1 1\nf:\nrows 0\ni:\n2\nq:\n2\n", 4),   # empty marker on nonempty
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(FormatError) as exc:
        parse_triangle_text(text)
    assert exc.value.line == line


def test_parse_missing_pieces():
    with pytest.raises(FormatError, match="ranks"):
        parse_triangle_text("ring zmod4\nf:\n2\n")
    with pytest.raises(FormatError, match="missing block 'q:'"):
        parse_triangle_text("ring zmod4\nranks 1 1 1\nf:\n2\ni:\n2\n")
    with pytest.raises(FormatError, match="ring"):
        parse_triangle_text("ranks 1 1 1\nf:\n2\ni:\n2\nq:\n2\n")


def test_dual_number_literals():
    R = make_ring("dual2:2")
    T = x2_triangle(R, 1)
    text = format_triangle(T)
    assert "0,0|1,0" in text
    assert parse_triangle_text(text) == T


def test_matrix_file_round_trip(ring):
    rng = np.random.default_rng(42)
    for r, c in ((2, 3), (0, 2), (3, 0)):
        A = Matrix(ring, rng.integers(0, ring.size, size=(r, c)))
        assert parse_matrix_text(format_matrix_file(A)) == A


def test_certificate_round_trip(ring):
    rng = np.random.default_rng(43)
    for _ in range(20):
        T = random_exact_triangle(ring, rng, 3)
        cert = decide_exact(T)
        text = format_certificate(T, cert)
        pc = parse_certificate_text(text)
        assert pc.triangle == T and pc.iso == cert.iso and pc.x2_rank == cert.x2_rank
        assert verify_certificate_text(text)
    # a tampered certificate no longer verifies
    Z4 = make_ring("zmod4")
    text = format_certificate(x2_triangle(Z4, 1), decide_exact(x2_triangle(Z4, 1)))
    bad = text.replace("gamma:\n1", "gamma:\n2")  # 3 would still be an iso
    assert bad != text and not verify_certificate_text(bad)


# --- CLI ---------------------------------------------------------------------------

@pytest.fixture
def x2file(tmp_path):
    p = tmp_path / "x2.tri"
    p.write_text(X2_TEXT)
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_decide(capsys, tmp_path, x2file):
    code, out, _ = run(capsys, "decide", "--ring", "zmod4", "--file", x2file)
    assert code == 0 and out.strip() == "EXACT x2_rank=1 contractible_rank=0"
    bad = tmp_path / "bad.tri"
    bad.write_text("ring zmod4\nranks 1 1 1\nf:\n2\ni:\n2\nq:\n0\n")
    code, out, _ = run(capsys, "decide", "--file", str(bad))
    assert code == 1 and out.startswith("NOT_EXACT")
    bad.write_text("ring zmod4\nranks 1 1 1\nf:\n2\ni:\n2\nq:\n1\n")
    code, _, err = run(capsys, "decide", "--file", str(bad))
    assert code == 2 and "f∘q" in err
    code, _, err = run(capsys, "decide", "--file", str(tmp_path / "missing.tri"))
    assert code == 2
    zero = tmp_path / "zero.tri"
    zero.write_text("ring zmod4\nranks 0 0 0\nf:\nrows 0\ni:\nrows 0\nq:\nrows 0\n")
    assert run(capsys, "decide", "--file", str(zero))[0] == 0


def test_cli_decide_emit_cert(capsys, x2file):
    code, out, _ = run(capsys, "decide", "--file", x2file, "--emit", "cert")
    assert code == 0
    cert_text = out.rsplit("EXACT", 1)[0]
    assert verify_certificate_text(cert_text)


def test_cli_ring_mismatch(capsys, x2file):
    assert run(capsys, "decide", "--ring", "dual2:1", "--file", x2file)[0] == 2


def test_cli_invariants(capsys, x2file):
    code, out, _ = run(capsys, "invariants", "--file", x2file)
    assert code == 0
    assert out.strip().splitlines()[-1] == \
        "INVARIANTS quasi_exact=yes dims=1,1,1 sigma_cubed_identity=yes"


def test_cli_extend_fillin_cone(capsys, tmp_path, x2file):
    code, out, _ = run(capsys, "extend", "--ring", "zmod4", "--matrix", "2")
    assert code == 0 and "EXTEND x2_rank=1 cone_rank=1" in out
    T = parse_triangle_text(out.split("EXTEND")[0])
    assert T == x2_triangle(make_ring("zmod4"), 1)
    code, out, _ = run(capsys, "fillin", "--up", x2file, "--low", x2file,
                       "--alpha", "1", "--beta", "3")
    assert code == 0 and out.startswith("gamma:\n3\n") and "FILLIN cone_exact=yes" in out
    assert run(capsys, "fillin", "--up", x2file, "--low", x2file,
               "--alpha", "1", "--beta", "0")[0] == 2
    code, out, _ = run(capsys, "cone", "--source", x2file, "--target", x2file,
                       "--alpha", "1", "--beta", "1", "--gamma", "1")
    assert code == 0 and out.strip().endswith("CONE exact=yes")
    mfile = tmp_path / "m.mat"
    mfile.write_text("ring zmod4\nshape 1 2\n2 0\n")
    code, out, _ = run(capsys, "extend", "--ring", "zmod4", "--matrix", str(mfile))
    assert code == 0 and "ranks 2 1" in out


def test_cli_axioms(capsys):
    code, out, _ = run(capsys, "axioms", "--ring", "dual2:1", "--seed", "7", "--trials", "20",
                       "--max-rank", "2", "--emit", "summary")
    assert code == 0 and out.strip() == "AXIOMS ring=dual2:1 seed=7 trials=20 failures=0"


def test_cli_hopf_nexotic(capsys):
    code, out, _ = run(capsys, "hopf", "--ring", "zmod4", "--rank", "2")
    assert code == 0 and "HOPF ring=zmod4 rank=2 candidates=16 witnesses=0" in out
    code, out, _ = run(capsys, "nexotic", "--ring", "zmod4", "--rank", "1", "--n", "2")
    assert code == 0 and "NEXOTIC ring=zmod4 rank=1 n=2 witness=2" in out
    code, out, _ = run(capsys, "nexotic", "--ring", "zmod4", "--rank", "1", "--n", "3")
    assert code == 0 and "witness=none" in out
    assert run(capsys, "hopf", "--ring", "dual2:1", "--rank", "1")[0] == 2


def test_cli_gen_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "--ring", "galois4:2", "--kind", "exact_triangle",
                       "--seed", "3", "--count", "3", "--out", str(tmp_path / "g"))
    assert code == 0
    paths = out.split()
    assert len(paths) == 3
    from freetri.generators import generators
    for k, p in enumerate(paths):
        T = parse_triangle_text(open(p).read())
        again = generators("exact_triangle", np.random.default_rng([3, k]), 2,
                           make_ring("galois4:2"))
        assert T == again
    code, out1, _ = run(capsys, "gen", "--ring", "zmod4", "--seed", "9")
    code, out2, _ = run(capsys, "gen", "--ring", "zmod4", "--seed", "9")
    assert out1 == out2 and parse_triangle_text(out1)


def test_cli_usage_errors(capsys):
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "decide")[0] == 2
    assert run(capsys, "hopf", "--rank", "1")[0] == 2
    assert run(capsys, "axioms", "--ring", "zmod4", "--trials", "-1")[0] == 2


def test_cli_selfcheck(capsys):
    code, out, _ = run(capsys, "selfcheck")
    assert code == 0 and "SELFCHECK status=pass" in out
