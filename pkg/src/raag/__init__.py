"""Compressed words in graph groups (right-angled Artin groups).

Straight-line programs, trace monoids, compressed trace pattern matching and
the conjugacy problems built on it.
"""
from .alphabet import (
    IndependenceAlphabet,
    Letter,
    build_alphabet,
    connected_components,
    dependence_order,
    is_connected_subset,
    is_independent,
    parse_word,
)
from .conjugacy import (
    ConeDecomposition,
    GeneratorTable,
    apply_generators,
    ccp_decide,
    cone_decompose,
    inner_generator,
    out_word_problem,
    rsccp_solve,
)
from .ctrace import CompressedTrace, ccore, cinf, csup, csup_many, is_trivial, r_reduce, trace_equal
from .errors import ContractError, ResourceError, ValidationError
from .progression import ArithProgression, ParikhPoint, amalgamate
from .session import Session, load_session, parse_session, session_text
from .slp import (
    REFERENCE,
    Slp,
    WordBackend,
    concat,
    equal_words,
    from_word,
    inverse_slp,
    length,
    letter_at,
    occurrence_test_word,
    occurrences_at_cut_word,
    parikh,
    power,
    project_slp,
    rank_before_select,
    substring_slp,
)
from .trace import (
    Trace,
    canonicalize,
    conjugate_oracle,
    core_explicit,
    factor_occurrences_oracle,
    inf_diff,
    is_cyclically_irreducible,
    is_irreducible,
    levi_decompositions,
    nf_R,
    prefix_of,
    split_independent_suffix,
    sup,
)
from .tracematch import MatchInstance, extend_single, is_factor, pair_cut_progression, periodic_at_cut

__version__ = "0.1.0"
