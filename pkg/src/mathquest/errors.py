"""Exception types shared across the package."""


class MathQuestError(Exception):
    """Base class for every error raised by this package."""


class DomainError(MathQuestError, ValueError):
    """An argument violates an operation's domain preconditions."""


class ValidationError(MathQuestError, ValueError):
    """Caller-supplied data failed validation."""


class ConfigurationError(MathQuestError):
    """A configuration file is missing, malformed, or inconsistent."""


class UnknownLearnerError(MathQuestError, LookupError):
    """No learner with the requested id exists."""


class TopicLockedError(MathQuestError):
    """The topic's curriculum prerequisites have not been passed yet."""


class SessionStateError(MathQuestError):
    """The session is not in a state that allows the requested operation."""


class InsufficientTicketsError(MathQuestError):
    """The wallet balance cannot cover the purchase price."""
