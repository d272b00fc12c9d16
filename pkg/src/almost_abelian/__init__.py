"""Complex and symplectic structures on almost abelian Lie algebras, decided exactly.

The algebra g_A = R e0 ⋉_A R^(2n-1) is determined by one rational matrix A.
Modules:

- :mod:`.exact`   rational matrices, polynomials, factorization, Sturm counts
- :mod:`.tuples`  Jordan tuples, admissibility predicates, bordering relations
- :mod:`.jordan`  spectral profiles of matrices, isomorphism test, normalization
- :mod:`.decide`  existence decisions for arbitrary spectra
- :mod:`.witness` explicit structures, verification, and a Pfaffian oracle
- :mod:`.cli`     the ``almost-abelian`` command
"""
from .decide import (
    Decision,
    complex_admissible_profile,
    decide,
    inheritance_decisions,
    q_complex_admissible,
    q_symplectic_admissible,
    symplectic_admissible_profile,
)
from .errors import (
    AlmostAbelianError,
    InadmissibleError,
    InconclusiveError,
    NotNilpotentError,
    NotSquarefreeError,
    ParseError,
    PreconditionError,
    UnsupportedFactorError,
)
from .exact import Matrix, Poly, char_poly, factor_over_rationals, kernel_dimension_sequence, rank, real_root_count
from .jordan import (
    EigenClass,
    Eigenvalue,
    LieAlgebraSpec,
    SpectralProfile,
    isomorphic,
    nilpotent_part_tuple,
    nilpotent_tuple,
    normalize_generator,
    semisimple_profile,
    spectral_profile,
)
from .tuples import (
    JordanTuple,
    format_tuple,
    generate_admissible,
    generate_all,
    is_complex_admissible,
    is_symplectic_admissible,
    parse_tuple,
    sigma_member,
    successors,
)
from .witness import (
    BracketTable,
    ComplexWitness,
    SymplecticWitness,
    build_complex_witness,
    build_symplectic_witness,
    closed_two_form_space,
    symplectic_oracle,
    verify_complex,
    verify_symplectic,
)

__version__ = "0.1.0"
