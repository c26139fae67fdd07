"""Exact classification and embedding of linear orders given as terms."""

__version__ = "0.1.0"

from .analysis import (
    ClassReport, Jump, canonical_dense, classify, embeds_into_reals, is_separable,
    jump_cardinality, jump_relations, jumps, sided_dense,
)
from .cardinal import ALEPH0, CONTINUUM, Cardinal, Fin
from .dense import DenseSet, OmitSet, carrier, check_dense_sampled, finite_set
from .elements import (
    Int, InSum, Irr, Nat, NegInt, Ordering, Pair, Rat, between, bounds, cardinality,
    compare, element_at, enumerate_elems, format_elem, index_of, neighbor, parse_elem,
)
from .embed import (
    RationalEmbedding, SplitPoint, StagedReal, WeightedEmbedding, certified_compare,
    embed_rationals, embed_to_reals, jump_bit, jump_rational, naive_e1, universal_embed,
)
from .fixture import collision_fixture
from .homog import (
    Automorphism, PartialMap, Violation, extend_to_automorphism, quotient_map,
    validate_partial_map,
)
from .terms import (
    Finite, Ints, Omega, OmegaStar, Rats, Reals, Sum, Times2, format_term, normalize,
    parse_term,
)
