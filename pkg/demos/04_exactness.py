"""Deciding exactness: certificate, sigma^3 test and brute-force oracle."""

from freetri import (CandidateTriangle, Matrix, brute_force_exact, decide_exact,
                     format_certificate, make_ring, sigma_criterion)

R = make_ring("zmod4")
for f, i, q in ((2, 2, 2), (2, 2, 0), (0, 0, 0)):
    T = CandidateTriangle(*(Matrix(R, [[v]]) for v in (f, i, q)))
    cert = decide_exact(T)
    print(f"({f},{i},{q}) exact={cert is not None} oracle={brute_force_exact(T)}")

# over F4[eps] the twisted triangle (eps, eps, w eps) is quasi-exact but not exact
F = make_ring("dual2:2")
w = F.parse("0,1|0,0")
e = Matrix.scalar(F, 1, F.pi)
T = CandidateTriangle(e, e, Matrix.scalar(F, 1, F.mul(w, F.pi)))
print("(eps,eps,w eps): sigma^3 == 1:", sigma_criterion(T), " exact:", decide_exact(T) is not None)

T = CandidateTriangle(e, e, e)
print("certificate for (eps,eps,eps):")
print(format_certificate(T, decide_exact(T)))
