"""Exception hierarchy shared by every stage of the pipeline."""


class SummError(Exception):
    """Base class for all package errors."""


class DataError(SummError):
    """Bad or missing input data (CLI exit code 2)."""


class ParseError(DataError):
    pass


class EmptyBody(DataError):
    pass


class DuplicateId(DataError):
    pass


class EmptyDocument(DataError):
    pass


class EmptyVocabulary(DataError):
    pass


class EmptyReference(DataError):
    pass


class MissingReference(DataError):
    def __init__(self, doc_id):
        super().__init__(f"no reference summaries for {doc_id}")
        self.doc_id = doc_id


class DomainError(SummError, ValueError):
    """A numeric operation is undefined for the given arguments."""


class DegenerateVariance(DomainError):
    pass


class SolverError(SummError):
    """The integer program could not be solved to optimality (exit code 3)."""
