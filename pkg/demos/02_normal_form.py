"""Normal form P D Q over Z/4 and solving linear systems."""

from freetri import Matrix, make_ring, normal_form, solve_linear

R = make_ring("zmod4")
M = Matrix(R, [[2, 1, 3], [0, 2, 2], [2, 3, 1]])
nf = normal_form(M)
print("M =", M)
print("D =", nf.D, f"(r1={nf.r1} unit pivots, r2={nf.r2} pi pivots)")
assert nf.P @ nf.D @ nf.Q == M

b = [1, 2, 3]
sol = solve_linear(M, b)
if sol.is_empty:
    print("M x = b has no solution")
else:
    print(f"particular solution {sol.particular.tolist()}, kernel generators:")
    print(sol.kernel)
    print("all solutions:", [list(s) for s in sol.enumerate()])
