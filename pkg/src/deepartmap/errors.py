class DeepARTMAPError(Exception):
    pass


class DimensionError(DeepARTMAPError, ValueError):
    pass


class DomainError(DeepARTMAPError, ValueError):
    """A value lies outside the unit interval required for complement coding."""


class NotFittedError(DeepARTMAPError, RuntimeError):
    pass


class MapFieldConflict(DeepARTMAPError, RuntimeError):
    """A child category was re-associated to a different parent."""


class TransformError(DeepARTMAPError, ValueError):
    pass


class ConfigError(DeepARTMAPError, ValueError):
    pass


class DataError(DeepARTMAPError, ValueError):
    pass


class ModelFileError(DeepARTMAPError, ValueError):
    pass


class UnsupportedVersionError(ModelFileError):
    pass


class SyntheticSpecError(DeepARTMAPError, ValueError):
    pass
