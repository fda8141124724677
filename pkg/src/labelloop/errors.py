"""Exception hierarchy for labelloop.

Every domain error raised by the package subclasses LabelLoopError so callers
can catch the whole family at an API or CLI boundary.
"""


class LabelLoopError(Exception):
    """Base class for all labelloop errors."""


class ConfigError(LabelLoopError):
    """Invalid configuration value or combination."""


# corpus

class DuplicateId(LabelLoopError):
    def __init__(self, doc_id):
        super().__init__(f"duplicate document id: {doc_id!r}")
        self.doc_id = doc_id


class EmptyText(LabelLoopError):
    def __init__(self, row):
        super().__init__(f"empty text at row {row}")
        self.row = row


class UnknownLabel(LabelLoopError):
    def __init__(self, label, row=None):
        where = f" at row {row}" if row is not None else ""
        super().__init__(f"unknown label {label!r}{where}")
        self.label = label
        self.row = row


class SchemaTooSmall(LabelLoopError):
    def __init__(self, n_labels):
        super().__init__(f"need at least 2 distinct labels, found {n_labels}")
        self.n_labels = n_labels


class MissingGold(LabelLoopError):
    def __init__(self, doc_id):
        super().__init__(f"document {doc_id!r} has no gold label")
        self.doc_id = doc_id


class DatasetFormatError(LabelLoopError):
    """Unparseable file: bad header, malformed row, invalid JSON line."""


# featurizer

class EmptyCorpus(LabelLoopError):
    pass


class EmptyVocabulary(LabelLoopError):
    pass


# classifier

class DimMismatch(LabelLoopError):
    def __init__(self, expected, got):
        super().__init__(f"dimension mismatch: expected {expected}, got {got}")
        self.expected = expected
        self.got = got


class EmptyBatch(LabelLoopError):
    pass


# uncertainty

class InvalidDistribution(LabelLoopError):
    pass


class InvalidBatchSize(LabelLoopError):
    def __init__(self, k):
        super().__init__(f"batch size must be >= 1, got {k}")
        self.k = k


# loop

class EmptyEval(LabelLoopError):
    pass


class EmptyPool(LabelLoopError):
    pass


class NotInPool(LabelLoopError):
    def __init__(self, doc_id):
        super().__init__(f"document {doc_id!r} is not in the selection pool")
        self.doc_id = doc_id


class BudgetExhausted(LabelLoopError):
    pass


class PoolExhausted(LabelLoopError):
    pass


# evaluation

class LengthMismatch(LabelLoopError):
    pass


class IndexOutOfRange(LabelLoopError):
    pass


# backends

class BackendError(LabelLoopError):
    """Base for external-predictor failures."""


class BackendUnavailable(BackendError):
    """Transport failure, timeout, or non-200 response."""


class BackendProtocolError(BackendError):
    """Response body does not match the wire contract."""


class NoHints(LabelLoopError):
    pass
