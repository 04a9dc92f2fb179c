"""A small seeded campaign over the triangulated-category axioms."""

from freetri import verify_axioms

for desc in ("zmod4", "galois4:2", "dual2:1", "dual2:2"):
    print(verify_axioms(desc, seed=1, trials=50, max_rank=3).text())
    print()
