"""Candidate triangles, morphisms, mapping cones and homotopies."""

import numpy as np

from freetri import cone_iso_from_homotopy, decide_exact, make_ring, mapping_cone, x2_triangle
from freetri.generators import random_exact_triangle, random_homotopic_pair

R = make_ring("zmod4")
X = x2_triangle(R, 1)
print("X2 =", X, " ranks", X.ranks)

rng = np.random.default_rng(3)
S, T = random_exact_triangle(R, rng, 2), random_exact_triangle(R, rng, 2)
print("S =", S)
print("T =", T)
m1, m2, H = random_homotopic_pair(S, T, rng)
print("m1 =", (m1.alpha, m1.beta, m1.gamma))
print("m2 =", (m2.alpha, m2.beta, m2.gamma))
C1, C2 = mapping_cone(m1), mapping_cone(m2)
iso = cone_iso_from_homotopy(m1, m2, H)
print("cone(m1) exact:", decide_exact(C1) is not None,
      " cone(m2) exact:", decide_exact(C2) is not None)
print("cone isomorphism alpha =", iso.alpha)
print("homotopy theta =", H.theta)
