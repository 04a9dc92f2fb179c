"""No nonzero hopfian objects, every object exotic, and n-exoticity only for n = 2."""

from freetri import exotic_certificate, hopf_search, make_ring, n_exotic_search, two_c_nonzero

R = make_ring("zmod4")
for n in (1, 2, 3):
    print(hopf_search(R, n).line(), " 2*1_C != 0:", two_c_nonzero(R, n))
print("exotic witness on R^2: h =", exotic_certificate(R, 2).h)
for n in range(4):
    print(n_exotic_search(R, 1, n).line())
