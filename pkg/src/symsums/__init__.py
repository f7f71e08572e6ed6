"""Exact evaluation of exponential sums of symmetric polynomials over GF(p^r).

The package provides four independent evaluators for the exponential sum of
a linear combination of elementary symmetric polynomials over any Galois
field (brute-force enumeration, multinomial sums, partition sums and exact
closed forms over cyclotomic integers), derives integer linear recurrences
satisfied by these sequences, and reports the induced equal-sum sections of
multinomial coefficient lists together with their Diophantine solutions.
"""

from .gf import (
    DegreeMismatchError,
    FieldElement,
    FieldError,
    GaloisField,
    NotPrimeError,
    ReducibleModulusError,
    make_field,
    parse_field_spec,
)
from .cyclo import (
    CycloRational,
    CyclotomicInt,
    IntPolynomial,
    NotAUnitError,
    NotRationalIntegerError,
    cyclotomic_polynomial,
    galois_conjugate,
)
from .symfun import (
    ArityMismatchError,
    BudgetExceededError,
    SymmetricSpec,
    brute_force_exp_sum,
    esym_eval,
    lambda_eval,
    lambda_periodic,
    lucas_binomial_mod_p,
    parse_sym_spec,
)
from .msum import (
    DiophantineSolution,
    InvalidCompositionError,
    OddCharacteristicError,
    SectionReport,
    compositions,
    diophantine_solution,
    exp_sum_multinomial,
    exp_sum_partition,
    multinomial_coefficient,
    multinomial_list,
    partitions_into_at_most,
    pq_section,
)
from .closed import (
    ClosedForm,
    PeriodicExponentTable,
    closed_form_eval,
    exp_sum_closed,
    general_closed_coefficients,
    period_for_degree,
    rt_split_sum,
    twisted_binomial_closed,
)
from .recur import (
    InsufficientTermsError,
    NoRecurrenceFoundError,
    RecurrenceCertificate,
    char_poly,
    lcm_char_poly,
    minimal_integer_recurrence,
    minimal_poly_algebraic,
    poly_divides,
    verify_recurrence,
)

__version__ = "0.1.0"
