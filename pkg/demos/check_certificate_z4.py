"""Stand-alone checker for Z/4 certificate files (pure Python, no freetri import).

Usage: python check_certificate_z4.py CERT   (make one with `freetri decide --emit cert`)
Checks beta f = F alpha, gamma i = I beta, alpha q = Q gamma for (F, I, Q) = X2 + K,
that alpha, beta, gamma are invertible, and that (theta, phi, psi) contracts K.
"""
import sys


def read(path):
    scalars, blocks, cur = {}, {}, None
    for line in open(path):
        words = line.split("#")[0].split()
        if not words or words[0] in ("ring", "EXACT"):
            continue
        if words[0] in ("ranks", "x2_rank", "contractible_ranks"):
            scalars[words[0]] = [int(t) for t in words[1:]]
        elif words[0].endswith(":"):
            cur = blocks.setdefault(words[0][:-1], [])
        elif words[0] not in ("rows", "cols"):
            cur.append([int(t) % 4 for t in words])
    return scalars, blocks


def zeros(r, c):
    return [[0] * c for _ in range(r)]


def mat(rows, r, c):
    return rows if r and c else zeros(r, c)


def mul(x, y, cols):
    return [[sum(a * y[k][j] for k, a in enumerate(row)) % 4 for j in range(cols)] for row in x]


def add(x, y):
    return [[(u + v) % 4 for u, v in zip(r, s)] for r, s in zip(x, y)]


def eye(n, d=1):
    return [[d * (r == s) for s in range(n)] for r in range(n)]


def diag(x, y, c1, c2):
    return [r + [0] * c2 for r in x] + [[0] * c1 + r for r in y]


def invertible_mod2(m):
    m = [[v % 2 for v in r] for r in m]
    for col in range(len(m)):
        piv = next((r for r in range(col, len(m)) if m[r][col]), None)
        if piv is None:
            return False
        m[col], m[piv] = m[piv], m[col]
        m = [[(v + w) % 2 for v, w in zip(r, m[col])] if k != col and r[col] else r
             for k, r in enumerate(m)]
    return True


S, B = read(sys.argv[1])
a, b, c = S["ranks"]
n, (ka, kb, kc) = S["x2_rank"][0], S["contractible_ranks"]
f, i, q = mat(B["f"], b, a), mat(B["i"], c, b), mat(B["q"], a, c)
al, be, ga = mat(B["alpha"], a, a), mat(B["beta"], b, b), mat(B["gamma"], c, c)
Kf, Ki, Kq = mat(B["Kf"], kb, ka), mat(B["Ki"], kc, kb), mat(B["Kq"], ka, kc)
th, ph, ps = mat(B["theta"], ka, kb), mat(B["phi"], kb, kc), mat(B["psi"], kc, ka)
ok = (n + ka, n + kb, n + kc) == (a, b, c)
if ok:
    F, I, Q = diag(eye(n, 2), Kf, n, ka), diag(eye(n, 2), Ki, n, kb), diag(eye(n, 2), Kq, n, kc)
    ok = (mul(be, f, a) == mul(F, al, a) and mul(ga, i, b) == mul(I, be, b)
          and mul(al, q, c) == mul(Q, ga, c)
          and all(invertible_mod2(m) for m in (al, be, ga))
          and add(mul(th, Kf, ka), mul(Kq, ps, ka)) == eye(ka)
          and add(mul(ph, Ki, kb), mul(Kf, th, kb)) == eye(kb)
          and add(mul(ps, Kq, kc), mul(Ki, ph, kc)) == eye(kc))
print("CERTIFICATE", "valid" if ok else "INVALID")
sys.exit(0 if ok else 1)
