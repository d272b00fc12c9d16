"""Print the nilpotent census for dimensions 4 through 12."""
from almost_abelian import generate_all, is_complex_admissible, is_symplectic_admissible

for dim in range(4, 14, 2):
    tuples = generate_all(dim - 1)
    both = [t for t in tuples if is_complex_admissible(t) and is_symplectic_admissible(t)]
    c = sum(map(is_complex_admissible, tuples))
    s = sum(map(is_symplectic_admissible, tuples))
    print(f"dim {dim:>2}: {len(tuples):>3} algebras, {c:>3} complex, {s:>3} symplectic, {len(both):>3} both")

print("\nneither structure in dimension 10:")
for t in generate_all(9):
    if not is_complex_admissible(t) and not is_symplectic_admissible(t):
        print(" ", t)
