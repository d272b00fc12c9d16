"""Decide structures for matrices with non-nilpotent spectra and cross-check with the oracle."""
from almost_abelian import BracketTable, Matrix, decide, spectral_profile, symplectic_oracle
from almost_abelian.jordan import companion, jordan_block
from almost_abelian.exact import Poly

cases = {
    "J3(1) + J2(1) + J2(-1) + J2(-1)": Matrix.direct_sum(
        jordan_block(3, 1), jordan_block(2, 1), jordan_block(2, -1), jordan_block(2, -1)
    ),
    "J3(1) + J2(-1)": Matrix.direct_sum(jordan_block(3, 1), jordan_block(2, -1)),
    "J3(1) + J2(1) - I2": Matrix.direct_sum(jordan_block(3, 1), jordan_block(2, 1), Matrix.identity(2) * -1),
    "[1] + rotation": Matrix.direct_sum(Matrix([[1]]), companion(Poly([1, 0, 1]))),
    "[2] + companion(x^2 - 2)": Matrix.direct_sum(Matrix([[2]]), companion(Poly([-2, 0, 1]))),
}

for name, m in cases.items():
    p = spectral_profile(m)
    c, s = decide(p, "complex"), decide(p, "symplectic")
    oracle = symplectic_oracle(BracketTable(m))
    print(f"{name}\n  profile {p}")
    print(f"  complex: {'yes' if c else 'no'}  [{c.case}]")
    print(f"  symplectic: {'yes' if s else 'no'}  [{s.case}], oracle: {'exists' if oracle.exists else 'none'}")
