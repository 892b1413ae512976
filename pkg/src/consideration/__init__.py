"""Finite models of consideration-set choice.

Filters map each menu to the subset an individual actually considers. The
package checks filter properties, composes filters, chooses filters under an
attention cost, builds threshold representations of IO filters and audits
choice data against WARP and its consideration-aware variants.
"""

from .attention import (
    FilterChoice,
    FilterSpace,
    FilterUtilityModel,
    check_convex_cost,
    check_preference_for_flexibility,
    choose_filter,
    evaluate_filter_utility,
    fixed_set_space,
    verify_costless_full_consideration,
    verify_worthless_consideration,
)
from .axioms import (
    Property,
    PropertyReport,
    check_condition_tau,
    check_constant_number,
    check_dio,
    check_dio_all,
    check_io,
    check_property,
    check_sens_alpha,
    check_sens_beta,
    describe_witness,
    replay_witness,
    verify_theorem1,
)
from .core import (
    ChoiceDataset,
    ExplicitTable,
    Filter,
    FixedSet,
    Menu,
    OrderedFilter,
    OrderedMenu,
    Preference,
    SatisficingPrefix,
    Threshold,
    TopK,
    Universe,
    all_preferences,
    apply_filter,
    build_filter,
    check_choice_membership,
    choose,
    empty_filter,
    enumerate_menus,
    fixed_set_filter,
    identity_filter,
)
from .errors import (
    CapacityError,
    ConsiderationError,
    DomainMismatchError,
    RepresentationError,
    ValidationError,
)
from .reports import TheoremReport
from .representation import (
    AggregateUtility,
    Axiom,
    ThresholdRepresentation,
    WarpReport,
    check_warp,
    check_warp_co,
    check_warp_io,
    construct_threshold_representation,
    induced_filter,
    rational_dataset,
    rationalizability_oracle,
    replay_warp_violation,
    threshold_choice,
    threshold_dataset,
    verify_theorem6,
)
from .sampling import enumerate_filters, io_filters
from .serialization import ParseError, dumps, from_document, load, loads, save, serialize, to_document
from .sequential import (
    CommutativityReport,
    FilterSequence,
    check_commutative2,
    check_commutative_n,
    compose2,
    compose_n,
    replay_commutativity_witness,
    verify_theorem2,
    verify_theorem3,
)

__version__ = "0.1.0"
