"""Preference-based abstract argumentation for case-based reasoning."""
from .af import (
    ArgKind,
    ArgumentationFramework,
    ArgumentRef,
    AttackEdge,
    EdgeKind,
    GroundedResult,
    grounded_extension,
    is_acyclic,
)
from .engine import (
    AACBRP,
    EngineConfig,
    Prediction,
    RegularityError,
    build_framework,
    casebase_attacks,
    check_regular,
    incoherent_attacks,
    is_coherent,
    nearest_cases,
    new_case_attacks,
    potential_attack_order,
    predict,
    preferred_cases,
)
from .kernels import BACKEND
from .model import (
    Case,
    Casebase,
    ComponentKind,
    ComponentSchema,
    Outcome,
    Polarity,
    SchemaError,
    build_casebase,
    make_characterisation,
    validate_casebase,
)
from .orders import Comparison, Comparator, PreferenceSequence, PreorderSpec, compare

__version__ = "0.1.0"
