"""Exact reasoning with belief functions as graded modalities over Łukasiewicz logic."""

from .belief import (
    MassFunction,
    ModelClass,
    NotABeliefFunction,
    bel,
    belief_table,
    mass_from_mu,
    mobius,
    mu_of_mel,
    pl,
    random_mass,
)
from .comparative import (
    ComparativeRelation,
    NotATotalPreorder,
    check_bw,
    compare_query,
    induced_relation,
    representable,
    total_preorders,
)
from .entail import (
    EntailmentVerdict,
    InconsistentTheory,
    Theory,
    check_graded_mp,
    entails,
    find_model,
    truth_degree,
)
from .mel import Box, characteristic_formula, diamond, mel_consequence, mel_models, mel_sat, mel_valid
from .pformula import B, PAtom, TruthConst, axiom_suite, p_eval
from .propcore import Vocabulary, evaluate, mod_set
from .syntax import ParseError, parse_mel, parse_p, parse_prop
