"""J5 + J3 + 0_1: the closed 2-forms, and why none of them is non-degenerate."""
from almost_abelian import BracketTable, closed_two_form_space, symplectic_oracle
from almost_abelian.jordan import nilpotent_matrix
from almost_abelian.tuples import parse_tuple
from almost_abelian.witness import format_form

b = BracketTable(nilpotent_matrix(parse_tuple("5,3;1,1;1")))
forms = closed_two_form_space(b)
print(f"closed 2-forms: dimension {len(forms)}")
for f in forms:
    print("  ", format_form(f))

r = symplectic_oracle(b)
print(f"oracle: {'exists' if r.exists else 'none'} after {r.samples} samples, "
      f"false-negative probability <= 2^{r.log2_bound:.0f}")
