"""Cryptanalysis toolkit for the Cayley hash over SL2(p).

Evaluates the hash, produces collisions (words for the identity), and
produces preimages (a word in the generators A, B for any target matrix).
"""

from .algebra import (
    IntMatrix2,
    Letter,
    ModMatrix2,
    Word,
    WordParseError,
    evaluate_word,
    generator,
    int_product,
    transpose_reverse,
    word_simplify,
    zemor_hash,
)
from .collision import CollisionLift, c_budget, identity_lift, identity_word, inverse_generator_words, length_cap
from .errors import NonResidue, NotCoprime, NotReducible, RetryExhausted
from .euclid import factor_nonneg
from .experiment import (
    ExperimentSummary,
    TrialRecord,
    run_experiment,
    run_trial,
    run_trial_with_timeout,
    summarize,
    write_csv,
    write_json,
)
from .number_theory import (
    FactorMultiset,
    balanced_divisor,
    balanced_divisor_from_factors,
    coprime_lift,
    ext_gcd,
    factorize,
    is_prime,
    legendre,
    mod_inv,
    next_prime,
    random_prime,
    sqrt_mod,
    try_factorize,
)
from .preimage import (
    DiagonalLift,
    LUParts,
    compress_powers,
    diagonal_lift,
    diagonal_word,
    lu_decompose,
    permutation_word,
    preimage_word,
    random_sl2,
    unitriangular_word,
)

__all__ = [
    "CollisionLift",
    "DiagonalLift",
    "ExperimentSummary",
    "FactorMultiset",
    "IntMatrix2",
    "LUParts",
    "Letter",
    "ModMatrix2",
    "NonResidue",
    "NotCoprime",
    "NotReducible",
    "RetryExhausted",
    "TrialRecord",
    "Word",
    "WordParseError",
    "balanced_divisor",
    "balanced_divisor_from_factors",
    "c_budget",
    "compress_powers",
    "coprime_lift",
    "diagonal_lift",
    "diagonal_word",
    "evaluate_word",
    "ext_gcd",
    "factor_nonneg",
    "factorize",
    "generator",
    "identity_lift",
    "identity_word",
    "int_product",
    "inverse_generator_words",
    "is_prime",
    "legendre",
    "length_cap",
    "lu_decompose",
    "mod_inv",
    "next_prime",
    "permutation_word",
    "preimage_word",
    "random_prime",
    "random_sl2",
    "run_experiment",
    "run_trial",
    "run_trial_with_timeout",
    "sqrt_mod",
    "summarize",
    "transpose_reverse",
    "try_factorize",
    "unitriangular_word",
    "word_simplify",
    "write_csv",
    "write_json",
    "zemor_hash",
]
