"""Continued fractions of square roots of primes.

Exact PQa expansions, continuant identities, parametric radicand families,
and reproducible digit-pattern scans over prime ranges.
"""

from .continuants import (
    F_closed,
    G_closed,
    build_X,
    build_Y,
    cassini_even,
    cassini_odd,
    continuant_p,
    continuant_q,
    fibonacci,
    golden_square,
)
from .errors import (
    BudgetExceededError,
    CFPrimeError,
    DomainError,
    InvariantViolationError,
    SquareInputError,
)
from .experiments import (
    density_Ak,
    density_predict,
    digit_frequency,
    expansion_audit,
    family_prime_census,
    scan_Ak,
    scan_L0,
    scan_L1,
    scan_patterns,
    scan_periods,
)
from .families import (
    discriminant_checks,
    lemma21_D,
    main_D,
    period8_param,
    period9_F,
)
from .primes import PrimeRange, is_prime, nth_prime, primes_stream
from .surd import (
    Expansion,
    PrefixExpansion,
    SurdState,
    expand_full,
    expand_prefix,
    initial_state,
    isqrt,
    pell_check,
    period_length,
    step,
)

__version__ = "0.1.0"
