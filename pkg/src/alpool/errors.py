"""Exception hierarchy shared by every subsystem.

Each error carries a stable ``code`` string so the HTTP gateway can return
machine-readable {error_code, message} bodies without mapping tables.
"""


class ActiveLearningError(Exception):
    code = "internal_error"

    def __init__(self, message: str = ""):
        super().__init__(message or self.__doc__ or self.code)


# core / session bookkeeping
class UnknownSample(ActiveLearningError):
    code = "unknown_sample"


class AlreadyLabeled(ActiveLearningError):
    code = "already_labeled"


class LabelOutOfRange(ActiveLearningError):
    code = "label_out_of_range"


# learners
class DimensionMismatch(ActiveLearningError):
    code = "dimension_mismatch"


class EmptySet(ActiveLearningError):
    code = "empty_set"


class DivergenceDetected(ActiveLearningError):
    code = "divergence_detected"


class TooFewMembers(ActiveLearningError):
    code = "too_few_members"


# strategies
class InvalidDistribution(ActiveLearningError):
    code = "invalid_distribution"


class SingleClass(ActiveLearningError):
    code = "single_class"


class VoteCountMismatch(ActiveLearningError):
    code = "vote_count_mismatch"


class MixedDimensions(ActiveLearningError):
    code = "mixed_dimensions"


class EmptyPool(ActiveLearningError):
    code = "empty_pool"


class NegativeBaseScore(ActiveLearningError):
    code = "negative_base_score"


class EmptyScores(ActiveLearningError):
    code = "empty_scores"


# quantum oracle
class AngleOutOfRange(ActiveLearningError):
    code = "angle_out_of_range"


class ZeroVector(ActiveLearningError):
    code = "zero_vector"


class WeakUnsupportedDimension(ActiveLearningError):
    code = "weak_unsupported_dimension"


class InvalidStrength(ActiveLearningError):
    code = "invalid_strength"


class BudgetExhausted(ActiveLearningError):
    code = "budget_exhausted"


class NoCounts(ActiveLearningError):
    code = "no_counts"


class EmptyTrainingSet(ActiveLearningError):
    code = "empty_training_set"


# harness / gateway
class ConfigInvalid(ActiveLearningError):
    code = "config_invalid"


class UnknownStrategy(ActiveLearningError):
    code = "unknown_strategy"


class UnsupportedFormat(ActiveLearningError):
    code = "unsupported_format"


class MismatchedSeeds(ActiveLearningError):
    code = "mismatched_seeds"


class UnknownSession(ActiveLearningError):
    code = "unknown_session"


class PoolExhausted(ActiveLearningError):
    code = "pool_exhausted"


class StaleQuery(ActiveLearningError):
    code = "stale_query"
