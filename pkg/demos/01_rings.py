"""The three ring families: Z/4, Galois rings GR(4, m), dual numbers F_{2^m}[eps]."""

from freetri import make_ring

for desc in ("zmod4", "galois4:2", "dual2:1", "dual2:2"):
    R = make_ring(desc)
    units = sum(R.is_unit(int(x)) for x in R.elements())
    print(f"{desc:10s} |R| = {R.size:3d}  residue field F_{R.q}  units = {units}  "
          f"2 = {R.format(R.from_int(2))}  pi^2 = {R.format(R.mul(R.pi, R.pi))}")

# element arithmetic with operators
R = make_ring("galois4:2")
x, y = R(R.parse("3,1")), R(R.parse("0,3"))  # Z/4 coefficients of 1, t
print("in GR(4,2):", x, "*", y, "=", x * y, "; inverse of x:", x.inverse())
