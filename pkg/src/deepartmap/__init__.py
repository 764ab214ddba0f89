"""Hierarchical adaptive-resonance clustering with DeepARTMAP."""
from .deep_artmap import ConfigReport, DeepARTMAP, Node, Supervision, validate_config
from .errors import (
    ConfigError,
    DataError,
    DeepARTMAPError,
    DimensionError,
    DomainError,
    MapFieldConflict,
    ModelFileError,
    NotFittedError,
    SyntheticSpecError,
    TransformError,
    UnsupportedVersionError,
)
from .fuzzy_art import (
    Exhausted,
    FuzzyART,
    FuzzyARTParams,
    Resonant,
    activation,
    complement_code,
    match_criterion,
    update_weight,
)
from .io import Dataset, ScalingStats, export_dot, load_csv, load_model, save_model, scale
from .map_field import MapField, Verdict
from .metrics import adjusted_rand, check_self_consistency, oracle_artmap, oracle_fuzzy_art, oracle_smart
from .simplified_artmap import match_tracking_raise, supervised_train_step
from .synthetic import gen_synthetic
from .transforms import ColumnSubset, FunctionTransform, Identity, Precomputed, apply_transform

__version__ = "0.1.0"
