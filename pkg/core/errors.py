"""
Exception hierarchy for the bot-detection toolkit.

ConfigError covers problems with what the user asked for (exit code 2),
DataError covers problems with what the data turned out to be (exit code 3).
"""


class BotMinerError(Exception):
    """Base class for every error raised by this package."""
    exit_code: int = 1


class ConfigError(BotMinerError):
    """Invalid configuration, flags or identifiers."""
    exit_code = 2


class DataError(BotMinerError):
    """Input data is missing, malformed or unusable."""
    exit_code = 3


class UnknownDataset(ConfigError):
    pass


class UnknownModel(ConfigError):
    pass


class IoFailure(DataError):
    pass


class EmptyDataset(DataError):
    pass


class SchemaMismatch(DataError):
    """A cache file, model file or matrix does not have the expected layout."""
    pass


class UnmappedClass(DataError):
    """A raw class label has no entry in the manifest's class_mapping."""
    pass


class DetectorUnavailable(DataError):
    pass


class DegenerateLabels(DataError):
    """Fewer than two classes present where two are required."""
    pass


class StratificationFailure(DataError):
    pass


class NothingToReport(DataError):
    pass
