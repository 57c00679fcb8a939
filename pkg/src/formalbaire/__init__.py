"""Brouwer-operations, cover certificates and formal maps on Baire space."""

from .brouwer import (
    DEFAULT_FUEL,
    UNIT,
    AtLeast,
    BarCell,
    BarItem,
    BrouwerOp,
    ContinuousFn,
    Evaluation,
    LazySup,
    Leaf,
    Sup,
    apply_nbhd,
    bar_cells,
    bar_contains,
    bar_enumerate,
    canonical_address,
    check_realises,
    evaluate,
    extract_realiser,
    is_constant_below,
    is_tabular,
    list_bar,
    skeleton,
    structurally_equal,
)
from .errors import (
    BudgetExhausted,
    ConstancyViolation,
    CutoffExhausted,
    FormalBaireError,
    FuelExhausted,
    InvalidFan,
    MalformedFragment,
    MissingRealiser,
    NotTabular,
    SchemaError,
    UndefinedValue,
)
from .fans import (
    CBar,
    FanTree,
    bounded_by,
    cbar_from_brouwer,
    cbar_from_function,
    cbar_member,
    check_cbar_witness,
    explicit,
    full_binary,
    function_from_cbar,
    make_fan,
    map_from_cbar,
    modulus_M,
    opaque_cbar,
    uniform_bar_modulus,
    uniform_modulus,
)
from .formal import (
    CovWitness,
    FormalMap,
    FormalPointFragment,
    apply_map,
    brouwer_from_cov,
    check_cover,
    cov_from_brouwer,
    find_cover_witness,
    formal_point_fragment,
    map_from_realisable,
    point_from_fragment,
    realiser_from_map,
    uniform_witness,
    validate_map,
)
from .seq import (
    Cycle,
    DecidableSet,
    FinSeq,
    Point,
    concat,
    cylinder,
    cylinder_set,
    ext_closure,
    ext_member,
    is_prefix,
    iseg,
)
from .verdict import Status, Verdict

__version__ = "0.1.0"
